//! Worked examples with known answers: collapsed spheres, the doubly
//! subdivided 2-sphere, and Strøm structures on standard pairs.

use std::sync::Arc;

use nssets::accept::standard_collapse;
use nssets::colimit::{standard_pair, Subcomplex};
use nssets::desing::{desingularize, verify_collapse_structure};
use nssets::homology::{homology, homology_of_map, induces_homology_isomorphism};
use nssets::iso::are_isomorphic;
use nssets::sset::simplex;
use nssets::strom::{cobase_change_strom, lemma61_check, strom_sd2, verify_strom};
use nssets::subdivision::{sd, sd_iter};
use nssets::{FinSimpSet, NormalSimplex, SimpMap, SimplexId, StandardKind};

fn v(i: usize) -> NormalSimplex {
    NormalSimplex::nondegenerate(SimplexId::new(0, i))
}

#[test]
fn collapsed_spheres_desingularize_to_a_point() {
    let point = Arc::new(simplex(0));
    for n in 1..=4 {
        let d = desingularize(&standard_collapse(StandardKind::Boundary, n, None).unwrap()).unwrap();
        assert!(are_isomorphic(&d.dx, &point).is_some(), "n = {n}");
    }
}

#[test]
fn subdivided_collapsed_spheres_desingularize_to_an_edge() {
    let edge = Arc::new(simplex(1));
    for n in 2..=4 {
        let x = sd(&standard_collapse(StandardKind::Boundary, n, None).unwrap()).unwrap();
        let d = desingularize(&x).unwrap();
        assert!(are_isomorphic(&d.dx, &edge).is_some(), "n = {n}");
    }
}

#[test]
fn subdivided_circle_is_two_edges_on_two_vertices() {
    let x = sd(&standard_collapse(StandardKind::Boundary, 1, None).unwrap()).unwrap();
    // two copies of Δ[1] glued along their boundaries
    let two_edges = Arc::new(FinSimpSet::new(vec![2, 2], vec![vec![vec![]; 2], vec![vec![v(1), v(0)]; 2]]).unwrap());
    assert!(are_isomorphic(&x, &two_edges).is_some());
    assert!(x.is_nonsingular());
    let d = desingularize(&x).unwrap();
    assert!(d.steps.is_empty() && d.eta.is_isomorphism());
}

#[test]
fn doubly_subdivided_two_sphere() {
    let x = sd_iter(&standard_collapse(StandardKind::Boundary, 2, None).unwrap(), 2).unwrap();
    let d = desingularize(&x).unwrap();
    // the suspension of a 12-gon: 12 + 2 vertices, 12 + 2·12 edges, 2·12 triangles
    assert_eq!(d.dx.f_vector(), vec![14, 36, 24]);
    assert_eq!(homology(&d.dx).to_string(), "H_0 = Z\nH_1 = 0\nH_2 = Z\n");
    assert!(induces_homology_isomorphism(&d.eta));
}

#[test]
fn strom_structure_on_the_subdivided_triangle() {
    let (d2, bd) = standard_pair(StandardKind::Boundary, 2, None).unwrap();
    let s = strom_sd2(&d2, &bd).unwrap();
    assert!(verify_strom(&s).unwrap().passed());
    assert_eq!(s.target().f_vector(), vec![25, 60, 36]);

    // collapsing Sd²∂Δ[2] gives the same 2-sphere as above
    let f = SimpMap::to_point(s.source(), &Arc::new(simplex(0))).unwrap();
    let t = cobase_change_strom(&s, &f).unwrap();
    assert!(verify_strom(&t).unwrap().passed());
    assert_eq!(t.target().f_vector(), vec![14, 36, 24]);
    assert!(lemma61_check(&s, &f).unwrap());

    let (d2, horn) = standard_pair(StandardKind::Horn, 2, Some(0)).unwrap();
    assert!(verify_strom(&strom_sd2(&d2, &horn).unwrap()).unwrap().passed());
}

#[test]
fn eden_collapse_in_doubly_subdivided_triangle() {
    let (_, bd) = standard_pair(StandardKind::Boundary, 2, None).unwrap();
    let (_, inc) = bd.inclusion();
    let sd2 = nssets::subdivision::sd_map(&nssets::subdivision::sd_map(&inc).unwrap()).unwrap();
    let a = Subcomplex::image(&sd2);
    let rep = verify_collapse_structure(&a).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.v_vertices, 13);
}

#[test]
fn unit_on_collapsed_triangle_is_a_homology_isomorphism() {
    let x = sd_iter(&standard_collapse(StandardKind::Boundary, 2, None).unwrap(), 2).unwrap();
    let d = desingularize(&x).unwrap();
    let h = homology_of_map(&d.eta);
    assert!(h.is_isomorphism());
    // matrices of ±1 on Z in degrees 0 and 2
    for m in &h.degrees {
        if m.degree == 1 {
            assert_eq!((m.matrix.rows(), m.matrix.cols()), (0, 0));
        } else {
            assert_eq!((m.matrix.rows(), m.matrix.cols()), (1, 1));
            assert_eq!(m.matrix.determinant().magnitude().to_string(), "1");
        }
    }
}
