//! Normalized integer chains and homology.
//!
//! Homology is the stand-in for weak equivalence throughout: a map "looks
//! like" a weak equivalence when it induces an isomorphism on integral
//! homology. That is a necessary condition only; the acceptance instances are
//! simply connected or have a known 1-type, where it is adequate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::snf::{invariant_factors, smith_normal_form, Matrix};
use crate::sset::{FinSimpSet, SimpMap};

/// Sparse matrix entries `(row, column, value)`.
pub type Entries = Vec<(usize, usize, i64)>;

/// One generator per nondegenerate simplex; `∂x = Σ (-1)^j d_j x`, dropping
/// degenerate faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    /// `boundaries[n]`: `C_n -> C_{n-1}`, rows indexed by `(n-1)`-simplices;
    /// `boundaries[0]` is empty.
    pub boundaries: Vec<Entries>,
}

impl ChainComplex {
    pub fn top(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `∂_n` as a dense `rank(n-1) × rank(n)` matrix.
    pub fn boundary_matrix(&self, n: usize) -> Matrix {
        let rows = if n == 0 { 0 } else { self.rank(n - 1) };
        let mut m = Matrix::zeros(rows, self.rank(n));
        if let Some(es) = self.boundaries.get(n) {
            for &(r, c, v) in es {
                let cur = m.get(r, c) + v;
                m.set(r, c, cur);
            }
        }
        m
    }

    /// `∂_{n-1} ∘ ∂_n = 0` for every `n`.
    pub fn is_complex(&self) -> bool {
        (2..self.ranks.len()).all(|n| self.boundary_matrix(n - 1).mul(&self.boundary_matrix(n)).is_zero())
    }
}

pub fn chains(x: &FinSimpSet) -> ChainComplex {
    let ranks = x.counts().to_vec();
    let boundaries = (0..ranks.len())
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            let mut es = Vec::new();
            for s in x.ids_of_dim(n) {
                for j in 0..=n {
                    let f = x.face(s, j);
                    if !f.is_degenerate() {
                        es.push((f.base.index, s.index, if j % 2 == 0 { 1 } else { -1 }));
                    }
                }
            }
            es
        })
        .collect();
    ChainComplex { ranks, boundaries }
}

/// Per degree: a Betti number and the torsion coefficients (each `≥ 2` and
/// dividing the next).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyProfile {
    pub fn is_zero(&self) -> bool {
        self.betti.iter().all(|&b| b == 0) && self.torsion.iter().all(Vec::is_empty)
    }

    /// `Σ (-1)^n b_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// The group in degree `n` as `Z^b ⊕ Z/t1 ⊕ …`.
    pub fn group(&self, n: usize) -> String {
        let b = self.betti.get(n).copied().unwrap_or(0);
        let mut parts = Vec::new();
        match b {
            0 => {}
            1 => parts.push("Z".to_string()),
            _ => parts.push(format!("Z^{b}")),
        }
        for t in self.torsion.get(n).into_iter().flatten() {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in 0..self.betti.len() {
            writeln!(f, "H_{n} = {}", self.group(n))?;
        }
        Ok(())
    }
}

fn profile_of(c: &ChainComplex) -> HomologyProfile {
    let top = c.ranks.len();
    // factors[n]: invariant factors of ∂_n
    let factors: Vec<Vec<BigInt>> = (0..=top)
        .map(|n| {
            if n == 0 || n >= top {
                Vec::new()
            } else {
                invariant_factors(c.rank(n - 1), c.rank(n), &c.boundaries[n])
            }
        })
        .collect();
    let mut betti = Vec::with_capacity(top);
    let mut torsion = Vec::with_capacity(top);
    for n in 0..top {
        betti.push(c.rank(n) - factors[n].len() - factors[n + 1].len());
        torsion.push(factors[n + 1].iter().filter(|t| !t.is_one()).cloned().collect());
    }
    HomologyProfile { betti, torsion }
}

pub fn homology(x: &FinSimpSet) -> HomologyProfile {
    profile_of(&chains(x))
}

/// `f_#`: a nondegenerate simplex goes to its image if that is
/// nondegenerate and to zero otherwise.
pub fn chain_map(f: &SimpMap) -> Vec<Entries> {
    f.images()
        .iter()
        
        .map(|row| {
            row.iter().enumerate().filter(|(_, y)| !y.is_degenerate()).map(|(k, y)| (y.base.index, k, 1)).collect()
        })
        .collect()
}

/// The mapping cone `C_n = A_{n-1} ⊕ B_n`, `∂(a, b) = (-∂a, f a + ∂b)`.
pub fn mapping_cone(f: &SimpMap) -> ChainComplex {
    let a = chains(f.source());
    let b = chains(f.target());
    let fm = chain_map(f);
    let top = (a.ranks.len() + 1).max(b.ranks.len());
    let ranks: Vec<usize> = (0..top).map(|n| (if n > 0 { a.rank(n - 1) } else { 0 }) + b.rank(n)).collect();
    let boundaries = (0..top)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            // rows: A_{n-2} then B_{n-1}; columns: A_{n-1} then B_n
            let row_shift = if n >= 2 { a.rank(n - 2) } else { 0 };
            let col_shift = a.rank(n - 1);
            let mut es = Vec::new();
            if n >= 2 {
                for &(r, c, v) in a.boundaries.get(n - 1).into_iter().flatten() {
                    es.push((r, c, -v));
                }
            }
            for &(r, c, v) in fm.get(n - 1).into_iter().flatten() {
                es.push((row_shift + r, c, v));
            }
            for &(r, c, v) in b.boundaries.get(n).into_iter().flatten() {
                es.push((row_shift + r, col_shift + c, v));
            }
            es
        })
        .collect();
    ChainComplex { ranks, boundaries }
}

/// Chosen generators of `H_n` and the means to find coordinates of a cycle.
struct Basis {
    /// `T` from the Smith form of `∂_n`, its inverse, and the rank of `∂_n`
    t: Matrix,
    t_inv: Matrix,
    rank: usize,
    /// the Smith transform of `∂_{n+1}` written in kernel coordinates
    s: Matrix,
    s_inv: Matrix,
    /// kept generator indices with their order (`0` for free)
    kept: Vec<(usize, BigInt)>,
}

impl Basis {
    fn new(c: &ChainComplex, n: usize) -> Basis {
        let dn = smith_normal_form(&c.boundary_matrix(n));
        let rank = dn.rank();
        let k = c.rank(n) - rank;
        let next = c.boundary_matrix(n + 1);
        let coords = dn.t_inv.mul(&next);
        let mut m = Matrix::zeros(k, next.cols());
        for i in 0..k {
            for j in 0..next.cols() {
                m.set(i, j, coords.get(rank + i, j).clone());
            }
        }
        let sm = smith_normal_form(&m);
        let diag = sm.d.diagonal();
        let kept = (0..k)
            .filter_map(|i| match diag.get(i) {
                Some(d) if d.is_one() => None,
                Some(d) => Some((i, d.clone())),
                None => Some((i, BigInt::zero())),
            })
            .collect();
        Basis { t: dn.t, t_inv: dn.t_inv, rank, s: sm.s, s_inv: sm.s_inv, kept }
    }

    /// A cycle representing generator `g`, in simplex coordinates.
    fn representative(&self, g: usize) -> Vec<BigInt> {
        let (i, _) = &self.kept[g];
        let in_kernel = self.s_inv.column(*i);
        let mut z = vec![BigInt::zero(); self.t.rows()];
        for (kc, coef) in in_kernel.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (r, zr) in z.iter_mut().enumerate() {
                let tv = self.t.get(r, self.rank + kc);
                if !tv.is_zero() {
                    *zr += coef * tv;
                }
            }
        }
        z
    }

    /// Coordinates of the class of a cycle; torsion coordinates reduced.
    fn coordinates(&self, z: &[BigInt]) -> Vec<BigInt> {
        let x = self.t_inv.mul_vec(z);
        let x: Vec<BigInt> = x[self.rank..].to_vec();
        let y = self.s.mul_vec(&x);
        self.kept.iter().map(|(i, d)| if d.is_zero() { y[*i].clone() } else { y[*i].mod_floor(d) }).collect()
    }
}

/// `H_n(f)` in the generators chosen for source and target.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub degree: usize,
    /// orders of the generators (`0` for a free generator)
    pub source_orders: Vec<BigInt>,
    pub target_orders: Vec<BigInt>,
    pub matrix: Matrix,
    pub is_isomorphism: bool,
}

#[derive(Clone, Debug)]
pub struct HomologyMap {
    pub degrees: Vec<InducedMap>,
}

impl HomologyMap {
    pub fn is_isomorphism(&self) -> bool {
        self.degrees.iter().all(|d| d.is_isomorphism)
    }
}

/// Degreewise isomorphism flags read off the mapping cone: `H_n(f)` is an
/// isomorphism once the cone has no homology in degrees `n` and `n + 1`.
pub fn iso_degrees(f: &SimpMap) -> Vec<bool> {
    let cone = profile_of(&mapping_cone(f));
    let clear =
        |n: usize| cone.betti.get(n).is_none_or(|&b| b == 0) && cone.torsion.get(n).is_none_or(Vec::is_empty);
    let top = f.source().counts().len().max(f.target().counts().len());
    (0..top).map(|n| clear(n) && clear(n + 1)).collect()
}

/// Whether `f` induces an isomorphism on integral homology in every degree
/// (the mapping cone is acyclic).
pub fn induces_homology_isomorphism(f: &SimpMap) -> bool {
    profile_of(&mapping_cone(f)).is_zero()
}

pub fn homology_of_map(f: &SimpMap) -> HomologyMap {
    let a = chains(f.source());
    let b = chains(f.target());
    let fm = chain_map(f);
    let iso = iso_degrees(f);
    let top = a.ranks.len().max(b.ranks.len());
    let degrees = (0..top)
        .map(|n| {
            let ba = Basis::new(&a, n);
            let bb = Basis::new(&b, n);
            let mut matrix = Matrix::zeros(bb.kept.len(), ba.kept.len());
            for g in 0..ba.kept.len() {
                let z = ba.representative(g);
                let mut fz = vec![BigInt::zero(); b.rank(n)];
                for &(r, c, v) in fm.get(n).into_iter().flatten() {
                    if !z[c].is_zero() {
                        fz[r] += &z[c] * v;
                    }
                }
                for (row, y) in bb.coordinates(&fz).into_iter().enumerate() {
                    matrix.set(row, g, y);
                }
            }
            InducedMap {
                degree: n,
                source_orders: ba.kept.iter().map(|(_, d)| d.clone()).collect(),
                target_orders: bb.kept.iter().map(|(_, d)| d.clone()).collect(),
                matrix,
                is_isomorphism: iso[n],
            }
        })
        .collect();
    HomologyMap { degrees }
}

pub fn f_vector(x: &FinSimpSet) -> Vec<usize> {
    x.f_vector()
}

pub fn euler_characteristic(x: &FinSimpSet) -> i64 {
    x.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimit::{collapse, Subcomplex};
    use crate::sset::{boundary, simplex, SimplexId};
    use crate::subdivision::{last_vertex, sd_iter};
    use std::sync::Arc;

    fn z(n: usize) -> HomologyProfile {
        let mut betti = vec![0; n + 1];
        betti[0] = 1;
        HomologyProfile { betti, torsion: vec![Vec::new(); n + 1] }
    }

    fn sphere(n: usize) -> Arc<FinSimpSet> {
        let d = Arc::new(simplex(n));
        collapse(&Subcomplex::new(&d, d.ids().filter(|x| x.dim < n)).unwrap()).unwrap().apex
    }

    #[test]
    fn simplices_are_acyclic() {
        for n in 0..4 {
            let c = chains(&simplex(n));
            assert!(c.is_complex());
            assert_eq!(homology(&simplex(n)), z(n));
        }
    }

    #[test]
    fn collapsed_boundary() {
        let s = sphere(2);
        let c = chains(&s);
        assert_eq!(c.ranks, vec![1, 0, 1]);
        assert!(c.boundaries.iter().all(Vec::is_empty));
        let h = homology(&s);
        assert_eq!(h.betti, vec![1, 0, 1]);
        assert_eq!(h.to_string(), "H_0 = Z\nH_1 = 0\nH_2 = Z\n");
    }

    #[test]
    fn circle_edge_has_zero_boundary() {
        let s = sphere(1);
        assert_eq!(chains(&s).boundary_matrix(1), Matrix::zeros(1, 1));
        assert_eq!(homology(&s).betti, vec![1, 1]);
        assert_eq!(homology(&boundary(3)).betti, vec![1, 0, 1]);
    }

    #[test]
    fn projective_plane_torsion() {
        // Δ[2] with the edge 02 collapsed and 01 glued to 12: one 2-cell
        // attached along a·a
        use crate::delta::Operator;
        use crate::quotient::quotient;
        use crate::sset::NormalSimplex;
        let d = Arc::new(simplex(2));
        let e = |i: usize| NormalSimplex::nondegenerate(SimplexId::new(1, i));
        let point = NormalSimplex { base: SimplexId::new(0, 0), degeneracy: Operator::degeneracy(0, 1) };
        let q = quotient(&d, &[(e(0), e(2)), (e(1), point)]).unwrap();
        let h = homology(&q.set);
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigInt::from(2)]);
        assert_eq!(h.group(1), "Z/2");
    }

    #[test]
    fn induced_maps() {
        let d1 = Arc::new(simplex(1));
        let id = homology_of_map(&SimpMap::identity(&d1));
        assert!(id.is_isomorphism());
        assert_eq!(id.degrees[0].matrix, Matrix::identity(1));
        let lv = last_vertex(&d1).unwrap();
        assert!(homology_of_map(&lv).degrees[0].is_isomorphism);
        let s = sphere(2);
        let m = homology_of_map(&SimpMap::identity(&s));
        assert_eq!(m.degrees[2].matrix, Matrix::identity(1));
        let pt = Arc::new(simplex(0));
        let to_pt = SimpMap::to_point(&s, &pt).unwrap();
        let hm = homology_of_map(&to_pt);
        assert!(hm.degrees[0].is_isomorphism && !hm.degrees[2].is_isomorphism);
        assert!(!induces_homology_isomorphism(&to_pt));
    }

    #[test]
    fn subdivision_preserves_homology() {
        let s = sphere(2);
        let s2 = sd_iter(&s, 2).unwrap();
        assert_eq!(homology(&s2), homology(&s));
        let d2 = Arc::new(simplex(2));
        let sd2 = sd_iter(&d2, 2).unwrap();
        assert_eq!(f_vector(&sd2), vec![25, 60, 36]);
        assert_eq!(euler_characteristic(&sd2), 1);
        assert_eq!(euler_characteristic(&s), 2);
    }
}
