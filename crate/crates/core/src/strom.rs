//! Strøm maps with explicit witnesses.
//!
//! A [`StromStructure`] on `k : A -> B` carries everything needed to check the
//! definition by finite map equalities: an abyss `W ⊆ B` through which `k`
//! factors as `j ∘ i`, a retraction `r : W -> A` of `i`, and a homotopy
//! `ε : W × Δ[1] -> W` from `i ∘ r` to the identity that is constant on `A`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::colimit::{copair, is_abyss, is_eden, product_with_interval, pushout, IntervalProduct, Subcomplex};
use crate::delta::Operator;
use crate::desing::desingularize;
use crate::error::{Error, Result};
use crate::iso::are_isomorphic;
use crate::poset::{nerve_map, sharp, sharp_map, Nerve};
use crate::quotient::descend;
use crate::sset::{FinSimpSet, NormalSimplex, SimpMap, SimplexId};
use crate::subdivision::Subdivision;

/// A homotopy `X × Δ[1] -> Y`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub product: IntervalProduct,
    pub map: SimpMap,
}

impl Homotopy {
    pub fn new(product: IntervalProduct, map: SimpMap) -> Result<Self> {
        if !(Arc::ptr_eq(map.source(), &product.set) || **map.source() == *product.set) {
            return Err(Error::Composition("homotopy is not defined on the product".into()));
        }
        if !map.is_valid() {
            return Err(Error::InvalidMap("homotopy is not simplicial".into()));
        }
        Ok(Homotopy { product, map })
    }

    /// The restriction to `X × {e}`.
    pub fn end(&self, e: usize) -> Result<SimpMap> {
        let inc = if e == 0 { &self.product.i0 } else { &self.product.i1 };
        self.map.compose(inc)
    }
}

#[derive(Clone, Debug)]
pub struct StromStructure {
    pub k: SimpMap,
    pub w: Subcomplex,
    /// `W` as a simplicial set; `j : W -> B` identifies it with `w`.
    pub w_set: Arc<FinSimpSet>,
    pub i: SimpMap,
    pub j: SimpMap,
    pub r: SimpMap,
    pub eps: Homotopy,
}

impl StromStructure {
    pub fn source(&self) -> &Arc<FinSimpSet> {
        self.k.source()
    }

    pub fn target(&self) -> &Arc<FinSimpSet> {
        self.k.target()
    }
}

/// One flag per clause of the definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StromReport {
    /// `k` is degreewise injective and its image is an eden.
    pub eden_inclusion: bool,
    /// `W` is an abyss containing the image and `k = j ∘ i`.
    pub abyss_factorization: bool,
    /// `r ∘ i = 1`.
    pub retraction: bool,
    /// `ε` deforms `W` onto `A` rel `A`.
    pub deformation: bool,
}

impl StromReport {
    pub fn passed(&self) -> bool {
        self.eden_inclusion && self.abyss_factorization && self.retraction && self.deformation
    }

    pub fn as_array(&self) -> [bool; 4] {
        [self.eden_inclusion, self.abyss_factorization, self.retraction, self.deformation]
    }
}

pub fn verify_strom(s: &StromStructure) -> Result<StromReport> {
    let a = s.source();
    let b = s.target();
    let fits = |f: &SimpMap, src: &Arc<FinSimpSet>, tgt: &Arc<FinSimpSet>| {
        (Arc::ptr_eq(f.source(), src) || f.source() == src) && (Arc::ptr_eq(f.target(), tgt) || f.target() == tgt)
    };
    if !(fits(&s.i, a, &s.w_set) && fits(&s.j, &s.w_set, b) && fits(&s.r, &s.w_set, a))
        || !(Arc::ptr_eq(s.w.ambient(), b) || **s.w.ambient() == **b)
        || !(Arc::ptr_eq(&s.eps.product.factor, &s.w_set) || *s.eps.product.factor == *s.w_set)
        || !(Arc::ptr_eq(s.eps.map.target(), &s.w_set) || **s.eps.map.target() == *s.w_set)
    {
        return Err(Error::Malformed("Strøm structure components do not fit together".into()));
    }
    for f in [&s.k, &s.i, &s.j, &s.r, &s.eps.map] {
        if !f.is_valid() {
            return Err(Error::Malformed("a component of the Strøm structure is not simplicial".into()));
        }
    }

    let image = Subcomplex::image(&s.k);
    let eden_inclusion = s.k.is_degreewise_injective() && is_eden(&image);

    let abyss_factorization = is_abyss(&s.w)
        && image.members().is_subset(s.w.members())
        && s.j.is_degreewise_injective()
        && Subcomplex::image(&s.j).members() == s.w.members()
        && s.j.compose(&s.i)? == s.k;

    let retraction = s.r.compose(&s.i)? == SimpMap::identity(a);

    let ir = s.i.compose(&s.r)?;
    let pa = product_with_interval(a);
    let i_times_1 = pa.map_product(&s.i, &s.eps.product)?;
    let deformation = s.eps.end(0)? == ir
        && s.eps.end(1)? == SimpMap::identity(&s.w_set)
        && s.eps.map.compose(&i_times_1)? == s.i.compose(&pa.pr1)?;

    Ok(StromReport { eden_inclusion, abyss_factorization, retraction, deformation })
}

/// The Strøm structure on `∅ -> B`.
fn trivial(b: &Arc<FinSimpSet>) -> StromStructure {
    let e = Arc::new(FinSimpSet::empty());
    let product = product_with_interval(&e);
    let map = SimpMap::identity(&e).compose(&product.pr1).expect("empty maps compose");
    StromStructure {
        k: SimpMap::from_empty(b),
        w: Subcomplex::empty(b),
        w_set: e.clone(),
        i: SimpMap::identity(&e),
        j: SimpMap::from_empty(b),
        r: SimpMap::identity(&e),
        eps: Homotopy { product, map },
    }
}

/// `B(k)` for an eden `A ⊆ X` in a non-singular `X`, with `W` the nerve of
/// the simplices having a face in `A` and `r` taking the greatest such face.
pub fn strom_from_barratt_eden(x: &Arc<FinSimpSet>, a: &Subcomplex) -> Result<StromStructure> {
    if !(Arc::ptr_eq(a.ambient(), x) || **a.ambient() == **x) {
        return Err(Error::Params("subset does not live in the given set".into()));
    }
    if !x.is_nonsingular() {
        return Err(Error::Precondition("ambient set is singular".into()));
    }
    if !is_eden(a) {
        return Err(Error::Precondition("subset is not an eden".into()));
    }
    let px = sharp(x);
    let nx = Nerve::new(&px);
    if a.is_empty() {
        return Ok(trivial(&nx.set));
    }
    let (a_set, a_inc) = a.inclusion();
    let na = Nerve::new(&sharp(&a_set));
    let k = nerve_map(&sharp_map(&a_inc), &na, &nx);

    // position of each simplex of A in A^♯, keyed by its id in X
    let in_a: HashMap<SimplexId, usize> = a_set.ids().map(|y| (a_inc.image(y).base, a_set.global_index(y))).collect();
    let inside = a.vertex_mask();
    let ids: Vec<SimplexId> = x.ids().collect();
    // for every element of X^♯ with a vertex in A: its greatest face in A,
    // as an element of X^♯
    let mut greatest: Vec<Option<usize>> = vec![None; ids.len()];
    for (e, &id) in ids.iter().enumerate() {
        let positions: Vec<usize> =
            x.vertices(id).iter().enumerate().filter(|(_, &v)| inside[v]).map(|(p, _)| p).collect();
        if positions.is_empty() {
            continue;
        }
        let mu = Operator::face_from_set(id.dim, &positions)?;
        let face = x.apply_face(id, &mu);
        debug_assert!(!face.is_degenerate() && a.contains(face.base));
        greatest[e] = Some(x.global_index(face.base));
    }
    let w_elements: Vec<usize> = (0..ids.len()).filter(|&e| greatest[e].is_some()).collect();
    let w_vertices: Vec<usize> =
        w_elements.iter().map(|&e| nx.simplex_of_chain(&[e]).expect("vertex of the nerve").index).collect();
    let w = Subcomplex::full_on_vertices(&nx.set, &w_vertices);
    let (w_set, j) = w.inclusion();
    let i = w.corestrict(&k, &w_set)?;

    let chain_of = |s: SimplexId| nx.chain(j.image(s).base);
    let r_images: Vec<Vec<NormalSimplex>> = w_set
        .counts()
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            (0..c)
                .map(|idx| {
                    let seq: Vec<usize> =
                        chain_of(SimplexId::new(n, idx)).iter().map(|&e| in_a[&ids[greatest[e].unwrap()]]).collect();
                    na.simplex_from_sequence(&seq).expect("greatest faces are monotone")
                })
                .collect()
        })
        .collect();
    let r = SimpMap::new(w_set.clone(), na.set.clone(), r_images)?;

    let to_w: HashMap<SimplexId, SimplexId> = w_set.ids().map(|s| (j.image(s).base, s)).collect();
    let product = product_with_interval(&w_set);
    let eps_images: Vec<Vec<NormalSimplex>> = product
        .pairs
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|(s, t)| {
                    let chain = chain_of(s.base);
                    let seq: Vec<usize> = s
                        .degeneracy
                        .images()
                        .iter()
                        .zip(t.images())
                        .map(|(&p, &tp)| {
                            let e = chain[p];
                            if tp == 0 {
                                greatest[e].unwrap()
                            } else {
                                e
                            }
                        })
                        .collect();
                    let y = nx.simplex_from_sequence(&seq).expect("ir(w) <= w is natural");
                    NormalSimplex { base: to_w[&y.base], degeneracy: y.degeneracy }
                })
                .collect()
        })
        .collect();
    let map = SimpMap::new(product.set.clone(), w_set.clone(), eps_images)?;
    let eps = Homotopy { product, map };
    Ok(StromStructure { k, w, w_set, i, j, r, eps })
}

/// Moves a structure along isomorphisms `alpha : A' -> A` and `beta : B -> B'`.
pub fn transport(s: &StromStructure, alpha: &SimpMap, beta: &SimpMap) -> Result<StromStructure> {
    if !alpha.is_isomorphism() || !beta.is_isomorphism() {
        return Err(Error::Precondition("transport needs isomorphisms".into()));
    }
    let alpha_inv = alpha.inverse()?;
    let k = beta.compose(&s.k)?.compose(alpha)?;
    let bj = beta.compose(&s.j)?;
    let w = Subcomplex::image(&bj);
    let (w_set, j) = w.inclusion();
    let theta = w.corestrict(&bj, &w_set)?;
    let theta_inv = theta.inverse()?;
    let i = theta.compose(&s.i)?.compose(alpha)?;
    let r = alpha_inv.compose(&s.r)?.compose(&theta_inv)?;
    let product = product_with_interval(&w_set);
    let back = product.map_product(&theta_inv, &s.eps.product)?;
    let map = theta.compose(&s.eps.map)?.compose(&back)?;
    Ok(StromStructure { k, w, w_set, i, j, r, eps: Homotopy { product, map } })
}

/// `Sd²(k)` for the inclusion `k` of `A ⊆ X`: the Barratt construction on
/// `Sd A ⊆ Sd X`, carried over to `Sd² A -> Sd² X` by the `b` isomorphisms.
pub fn strom_sd2(x: &Arc<FinSimpSet>, a: &Subcomplex) -> Result<StromStructure> {
    if !(Arc::ptr_eq(a.ambient(), x) || **a.ambient() == **x) {
        return Err(Error::Params("subset does not live in the given set".into()));
    }
    let sx = Subdivision::new(x)?;
    if !sx.set.is_nonsingular() {
        return Err(Error::Precondition("Sd of the ambient set is singular".into()));
    }
    let sxx = Subdivision::new(&sx.set)?;
    if a.is_empty() {
        return Ok(trivial(&sxx.set));
    }
    let (a_set, a_inc) = a.inclusion();
    let sa = Subdivision::new(&a_set)?;
    let sd_a = Subcomplex::image(&sa.map(&a_inc, &sx)?);
    let inner = strom_from_barratt_eden(&sx.set, &sd_a)?;
    let (sd_a_set, _) = sd_a.inclusion();
    let b_a = Subdivision::new(&sd_a_set)?.b_map()?;
    let b_x = sxx.b_map()?;
    // b_map builds its target afresh; point it at the nerves used above
    let b_a = b_a.with_target(inner.source())?;
    let b_x = b_x.with_target(inner.target())?;
    transport(&inner, &b_a, &b_x.inverse()?)
}

/// The cobase change of `S` along `f : A -> C` in non-singular sets, built
/// from `D(W ⊔_A C) -> D(B ⊔_A C)` with the induced retraction and homotopy.
pub fn cobase_change_strom(s: &StromStructure, f: &SimpMap) -> Result<StromStructure> {
    if !(Arc::ptr_eq(f.source(), s.source()) || f.source() == s.source()) {
        return Err(Error::Composition("map does not start at the source of the Strøm map".into()));
    }
    let c = f.target();
    if !c.is_nonsingular() {
        return Err(Error::Precondition("target of the map is singular".into()));
    }
    if !verify_strom(s)?.passed() {
        return Err(Error::Precondition("input is not a verified Strøm structure".into()));
    }
    let pw = pushout(&s.i, f)?;
    let dw = desingularize(&pw.apex)?;
    let pb = pushout(&s.k, f)?;
    let db = desingularize(&pb.apex)?;
    let w_hat = dw.dx.clone();
    let g = dw.eta.compose(&pw.left_leg)?;
    let i_hat = dw.eta.compose(&pw.right_leg)?;

    // maps out of D(W ⊔_A C) are given on W ⊔ C and descended twice
    let out_of_w_hat = |on_w: SimpMap, on_c: SimpMap| -> Result<SimpMap> {
        let h = copair(&pw.injections, &[on_w, on_c])?;
        let h1 = descend(&pw.quotient, &h)?;
        descend(&dw.eta, &h1)
    };
    let to_b_hat = db.eta.compose(&pb.left_leg)?;
    let j_hat = out_of_w_hat(to_b_hat.compose(&s.j)?, db.eta.compose(&pb.right_leg)?)?;
    let r_hat = out_of_w_hat(f.compose(&s.r)?, SimpMap::identity(c))?;

    // ε̂ on (W ⊔ C) × Δ[1]: g ∘ ε on the first summand, the constant homotopy
    // î ∘ pr₁ on the second
    let u = pw.quotient.source();
    let pu = product_with_interval(u);
    let mut origin: HashMap<SimplexId, (usize, SimplexId)> = HashMap::new();
    for (summand, inj) in pw.injections.iter().enumerate() {
        for x in inj.source().ids() {
            origin.insert(inj.image(x).base, (summand, x));
        }
    }
    let h_images: Vec<Vec<NormalSimplex>> = pu
        .pairs
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|(x, t)| {
                    let (summand, y) = origin[&x.base];
                    let y = NormalSimplex { base: y, degeneracy: x.degeneracy.clone() };
                    if summand == 0 {
                        g.apply(&s.eps.map.apply(&s.eps.product.pair(&y, t)))
                    } else {
                        i_hat.apply(&y)
                    }
                })
                .collect()
        })
        .collect();
    let h = SimpMap::new(pu.set.clone(), w_hat.clone(), h_images)
        .map_err(|e| Error::NotWellDefined(format!("pushed-forward homotopy: {e}")))?;
    let product = product_with_interval(&w_hat);
    let q = pu.map_product(&dw.eta.compose(&pw.quotient)?, &product)?;
    let eps_map = descend(&q, &h)?;

    let k = j_hat.compose(&i_hat)?;
    let w = Subcomplex::image(&j_hat);
    Ok(StromStructure { k, w, w_set: w_hat, i: i_hat, j: j_hat, r: r_hat, eps: Homotopy::new(product, eps_map)? })
}

/// Whether `B ⊔_W D(W ⊔_A C)` is isomorphic to `D(B ⊔_A C)`.
pub fn lemma61_check(s: &StromStructure, f: &SimpMap) -> Result<bool> {
    if !(Arc::ptr_eq(f.source(), s.source()) || f.source() == s.source()) {
        return Err(Error::Composition("map does not start at the source of the Strøm map".into()));
    }
    if !f.target().is_nonsingular() {
        return Err(Error::Precondition("target of the map is singular".into()));
    }
    let pw = pushout(&s.i, f)?;
    let dw = desingularize(&pw.apex)?;
    let g = dw.eta.compose(&pw.left_leg)?;
    let lhs = pushout(&s.j, &g)?;
    let rhs = desingularize(&pushout(&s.k, f)?.apex)?;
    Ok(are_isomorphic(&lhs.apex, &rhs.dx).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimit::collapse;
    use crate::sset::{boundary, horn, simplex};

    fn sub(x: &Arc<FinSimpSet>, ids: &[(usize, usize)]) -> Subcomplex {
        Subcomplex::generated(x, ids.iter().map(|&(d, i)| SimplexId::new(d, i))).unwrap()
    }

    fn labels_of(x: &FinSimpSet, ids: impl Iterator<Item = SimplexId>) -> Vec<String> {
        let mut v: Vec<String> = ids.map(|id| x.label(id).unwrap().to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn barratt_on_an_edge_end() {
        let d1 = Arc::new(simplex(1));
        let s = strom_from_barratt_eden(&d1, &sub(&d1, &[(0, 0)])).unwrap();
        assert!(verify_strom(&s).unwrap().passed());
        assert_eq!(s.w_set.counts(), &[2, 1]);
        assert_eq!(labels_of(s.target(), s.w.members().iter().copied().filter(|x| x.dim == 0)), ["0", "01"]);
        // both vertices of W retract to 0
        assert!(s.r.images()[0].iter().all(|y| s.source().label(y.base) == Some("0")));
    }

    #[test]
    fn barratt_on_a_triangle_edge() {
        let d2 = Arc::new(simplex(2));
        let s = strom_from_barratt_eden(&d2, &sub(&d2, &[(1, 0)])).unwrap();
        assert!(verify_strom(&s).unwrap().passed());
        let w_vertices: Vec<SimplexId> = s.w.members().iter().copied().filter(|x| x.dim == 0).collect();
        assert_eq!(labels_of(s.target(), w_vertices.iter().copied()), ["0", "01", "012", "02", "1", "12"]);
        let r_of = |name: &str| {
            let v = w_vertices.iter().find(|&&v| s.target().label(v) == Some(name)).unwrap();
            let local = s.w_set.ids_of_dim(0).find(|&u| s.j.image(u).base == *v).unwrap();
            s.source().label(s.r.image(local).base).unwrap().to_string()
        };
        assert_eq!(r_of("02"), "0");
        assert_eq!(r_of("12"), "1");
        assert_eq!(r_of("012"), "01");
    }

    #[test]
    fn barratt_on_everything_is_constant() {
        let d2 = Arc::new(simplex(2));
        let s = strom_from_barratt_eden(&d2, &Subcomplex::whole(&d2)).unwrap();
        assert!(verify_strom(&s).unwrap().passed());
        assert!(s.r.is_isomorphism());
        assert_eq!(s.eps.map, s.eps.end(0).unwrap().compose(&s.eps.product.pr1).unwrap());
    }

    #[test]
    fn broken_retraction_is_caught() {
        let d2 = Arc::new(simplex(2));
        let mut s = strom_from_barratt_eden(&d2, &sub(&d2, &[(1, 0)])).unwrap();
        let a = s.source().clone();
        let v = a.ids_of_dim(0).next().unwrap();
        let constant = SimpMap::to_point(&s.w_set, &Arc::new(simplex(0))).unwrap();
        let images = constant
            .images()
            .iter()
            .map(|row| row.iter().map(|y| NormalSimplex { base: v, degeneracy: y.degeneracy.clone() }).collect())
            .collect();
        s.r = SimpMap::new(s.w_set.clone(), a, images).unwrap();
        let rep = verify_strom(&s).unwrap();
        assert!(rep.eden_inclusion && rep.abyss_factorization && !rep.retraction);
    }

    #[test]
    fn sd2_of_boundary_and_horn() {
        let d2 = Arc::new(simplex(2));
        let b = Subcomplex::new(&d2, d2.ids().filter(|x| x.dim < 2)).unwrap();
        let s = strom_sd2(&d2, &b).unwrap();
        assert!(verify_strom(&s).unwrap().passed());
        assert_eq!(s.target().counts(), &[25, 60, 36]);
        assert_eq!(s.source().counts(), &[12, 12]);
        let h = Arc::new(horn(2, 0).unwrap());
        let hs = Subcomplex::new(&d2, d2.ids().filter(|&x| x.dim == 0 || (x.dim == 1 && x.index < 2))).unwrap();
        assert_eq!(hs.inclusion().0.counts(), h.counts());
        assert!(verify_strom(&strom_sd2(&d2, &hs).unwrap()).unwrap().passed());
        let pt = Arc::new(simplex(0));
        let t = strom_sd2(&pt, &Subcomplex::empty(&pt)).unwrap();
        assert!(verify_strom(&t).unwrap().passed());
        assert_eq!(t.target().counts(), &[1]);
    }

    #[test]
    fn cobase_change_examples() {
        let d1 = Arc::new(simplex(1));
        let s = strom_from_barratt_eden(&d1, &sub(&d1, &[(0, 0)])).unwrap();
        let pt = Arc::new(simplex(0));
        let f = SimpMap::to_point(s.source(), &pt).unwrap();
        let c = cobase_change_strom(&s, &f).unwrap();
        assert!(verify_strom(&c).unwrap().passed());
        assert!(lemma61_check(&s, &f).unwrap());

        let d2 = Arc::new(simplex(2));
        let b = Subcomplex::new(&d2, d2.ids().filter(|x| x.dim < 2)).unwrap();
        let s = strom_sd2(&d2, &b).unwrap();
        let f = SimpMap::to_point(s.source(), &pt).unwrap();
        let c = cobase_change_strom(&s, &f).unwrap();
        assert!(verify_strom(&c).unwrap().passed());
        assert!(lemma61_check(&s, &f).unwrap());
        assert_eq!(c.target().counts()[0], 14);
        let reference =
            desingularize(&collapse(&Subcomplex::new(&d2, d2.ids().filter(|x| x.dim < 2)).unwrap()).unwrap().apex)
                .unwrap();
        assert_eq!(reference.dx.counts(), &[1]);
    }

    #[test]
    fn cobase_change_over_empty_is_disjoint_union() {
        let d1 = Arc::new(simplex(1));
        let s = strom_from_barratt_eden(&d1, &Subcomplex::empty(&d1)).unwrap();
        let c = Arc::new(boundary(2));
        let f = SimpMap::from_empty(&c);
        let t = cobase_change_strom(&s, &f).unwrap();
        assert!(verify_strom(&t).unwrap().passed());
        let bd1 = s.target().counts();
        assert_eq!(t.target().counts(), &[bd1[0] + 3, bd1[1] + 3]);
        assert!(lemma61_check(&s, &f).unwrap());
    }
}
