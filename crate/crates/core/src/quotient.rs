//! Quotients of a finite simplicial set by the congruence generated by a list
//! of identified simplex pairs, and the induced maps out of such quotients.
//!
//! All simplices of degree at most `dim S` are enumerated and merged with a
//! union-find, closing under elementary faces and degeneracies. Nothing above
//! `dim S` is needed: a generating relation lives in degree at most `dim S`,
//! and any operator factors as a face followed by a degeneracy, so every
//! consequence in low degree is reached through intermediate degrees that never
//! exceed `dim S`.
//!
//! A class is degenerate exactly when it contains a simplex of the form
//! `x·σ` with `σ` a non-identity degeneracy. The nondegenerate classes are
//! numbered by their smallest member.

use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::delta::Operator;
use crate::error::{Error, Result};
use crate::sset::{FinSimpSet, NormalSimplex, SimpMap, SimplexId};

/// A quotient `S -> Q` together with the quotient map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub set: Arc<FinSimpSet>,
    pub map: SimpMap,
}

struct Tables {
    simplices: Vec<Vec<NormalSimplex>>,
    /// `faces[n][p][i]`: position of `s_p · δ_i` in degree `n - 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][p][j]`: position of `s_p · σ_j` in degree `n + 1`.
    degens: Vec<Vec<Vec<usize>>>,
}

impl Tables {
    fn new(s: &FinSimpSet, top: usize) -> Self {
        let idx = s.degree_index(top);
        let mut faces = Vec::with_capacity(top + 1);
        let mut degens = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let level = &idx.simplices[n];
            faces.push(
                level
                    .iter()
                    .map(|x| {
                        if n == 0 {
                            return Vec::new();
                        }
                        (0..=n).map(|i| idx.position(&s.act_unchecked(x, &Operator::face(i, n)))).collect()
                    })
                    .collect(),
            );
            degens.push(
                level
                    .iter()
                    .map(|x| {
                        if n == top {
                            return Vec::new();
                        }
                        (0..=n).map(|j| idx.position(&x.degenerate_by(&Operator::degeneracy(j, n + 1)))).collect()
                    })
                    .collect(),
            );
        }
        Tables { simplices: idx.simplices, faces, degens }
    }
}

/// Quotient of `s` by the simplicial congruence generated by `relations`.
pub fn quotient(s: &Arc<FinSimpSet>, relations: &[(NormalSimplex, NormalSimplex)]) -> Result<Quotient> {
    let Some(top) = s.dim() else {
        if relations.is_empty() {
            return Ok(Quotient { set: s.clone(), map: SimpMap::identity(s) });
        }
        return Err(Error::Precondition("relations on the empty simplicial set".into()));
    };
    for (a, b) in relations {
        s.check_id(a.base)?;
        s.check_id(b.base)?;
        if a.degree() != b.degree() {
            return Err(Error::Dimension(format!("cannot identify {a:?} with {b:?}")));
        }
        if a.degree() > top {
            return Err(Error::Dimension(format!("relation {a:?} ~ {b:?} above dimension {top}")));
        }
    }
    let t = Tables::new(s, top);
    let pos = |x: &NormalSimplex| -> usize {
        // simplices_of_degree groups by base, then lexicographic surjection
        t.simplices[x.degree()].binary_search_by(|y| cmp_enum(y, x)).expect("simplex enumerated")
    };
    let mut ufs: Vec<UnionFind<usize>> = t.simplices.iter().map(|l| UnionFind::new(l.len())).collect();
    let mut work: Vec<(usize, usize, usize)> = Vec::new();
    for (a, b) in relations {
        let n = a.degree();
        let (pa, pb) = (pos(a), pos(b));
        if ufs[n].union(pa, pb) {
            work.push((n, pa, pb));
        }
    }
    while let Some((n, a, b)) = work.pop() {
        if n > 0 {
            for i in 0..=n {
                let (fa, fb) = (t.faces[n][a][i], t.faces[n][b][i]);
                if ufs[n - 1].union(fa, fb) {
                    work.push((n - 1, fa, fb));
                }
            }
        }
        if n < top {
            for j in 0..=n {
                let (da, db) = (t.degens[n][a][j], t.degens[n][b][j]);
                if ufs[n + 1].union(da, db) {
                    work.push((n + 1, da, db));
                }
            }
        }
    }
    build_quotient(s, &t, &mut ufs)
}

fn cmp_enum(y: &NormalSimplex, x: &NormalSimplex) -> std::cmp::Ordering {
    (y.base.dim, y.base.index, y.degeneracy.images()).cmp(&(x.base.dim, x.base.index, x.degeneracy.images()))
}

fn build_quotient(s: &Arc<FinSimpSet>, t: &Tables, ufs: &mut [UnionFind<usize>]) -> Result<Quotient> {
    let top = t.simplices.len() - 1;
    // per degree: root -> normal form in the quotient
    let mut normal: Vec<Vec<Option<NormalSimplex>>> = Vec::with_capacity(top + 1);
    let mut counts = Vec::with_capacity(top + 1);
    let mut reps: Vec<Vec<SimplexId>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let level = &t.simplices[n];
        let roots: Vec<usize> = (0..level.len()).map(|p| ufs[n].find_mut(p)).collect();
        let mut degenerate = vec![false; level.len()];
        for (p, x) in level.iter().enumerate() {
            if x.is_degenerate() {
                degenerate[roots[p]] = true;
            }
        }
        let mut nf: Vec<Option<NormalSimplex>> = vec![None; level.len()];
        let mut rep_ids = Vec::new();
        // nondegenerate classes, numbered by smallest member (enumeration order)
        for (p, x) in level.iter().enumerate() {
            let r = roots[p];
            if degenerate[r] || nf[r].is_some() {
                continue;
            }
            nf[r] = Some(NormalSimplex::nondegenerate(SimplexId::new(n, rep_ids.len())));
            rep_ids.push(x.base);
        }
        for (p, x) in level.iter().enumerate() {
            let r = roots[p];
            if nf[r].is_some() || !x.is_degenerate() {
                continue;
            }
            // class of x.base in a lower degree, then degenerate
            let lower = &t.simplices[x.base.dim];
            let q = lower.binary_search_by(|y| cmp_enum(y, &NormalSimplex::nondegenerate(x.base))).unwrap();
            let lr = ufs[x.base.dim].find_mut(q);
            let base_nf = normal[x.base.dim][lr].as_ref().expect("lower degree normalized");
            nf[r] = Some(base_nf.degenerate_by(&x.degeneracy));
        }
        counts.push(rep_ids.len());
        reps.push(rep_ids);
        normal.push(nf);
    }
    let class_of = |x: &NormalSimplex, ufs: &mut [UnionFind<usize>], normal: &[Vec<Option<NormalSimplex>>]| {
        let n = x.degree();
        let p = t.simplices[n].binary_search_by(|y| cmp_enum(y, x)).unwrap();
        let r = ufs[n].find_mut(p);
        normal[n][r].clone().unwrap()
    };
    let mut faces: Vec<Vec<Vec<NormalSimplex>>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut rows = Vec::with_capacity(counts[n]);
        for &x in &reps[n] {
            if n == 0 {
                rows.push(Vec::new());
                continue;
            }
            let row = (0..=n).map(|i| class_of(s.face(x, i), ufs, &normal)).collect();
            rows.push(row);
        }
        faces.push(rows);
    }
    let mut q = FinSimpSet::new_unchecked(counts, faces)?;
    for (n, level) in reps.iter().enumerate() {
        for (i, &x) in level.iter().enumerate() {
            if let Some(l) = s.label(x) {
                q.set_label(SimplexId::new(n, i), l);
            }
        }
    }
    let q = Arc::new(q);
    let images = (0..=top)
        .map(|n| s.ids_of_dim(n).map(|x| class_of(&NormalSimplex::nondegenerate(x), ufs, &normal)).collect())
        .collect();
    let map = SimpMap::new_unchecked(s.clone(), q.clone(), images);
    Ok(Quotient { set: q, map })
}

/// Given a degreewise surjection `q : S -> Q` and `h : S -> T`, the unique
/// `g : Q -> T` with `g ∘ q = h`, or [`Error::NotWellDefined`].
pub fn descend(q: &SimpMap, h: &SimpMap) -> Result<SimpMap> {
    if !(Arc::ptr_eq(q.source(), h.source()) || q.source() == h.source()) {
        return Err(Error::Composition("maps to descend have different sources".into()));
    }
    let qs = q.target();
    let mut images: Vec<Vec<Option<NormalSimplex>>> = qs.counts().iter().map(|&c| vec![None; c]).collect();
    for x in q.source().ids() {
        let y = q.image(x);
        if !y.is_degenerate() && images[y.base.dim][y.base.index].is_none() {
            images[y.base.dim][y.base.index] = Some(h.image(x).clone());
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(n, row)| {
            row.into_iter()
                .enumerate()
                .map(|(i, s)| s.ok_or_else(|| Error::Precondition(format!("{n}/{i} is not hit by the quotient map"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let g = SimpMap::from_images(qs.clone(), h.target().clone(), images)?;
    for x in q.source().ids() {
        let lhs = g.apply(q.image(x));
        if &lhs != h.image(x) {
            return Err(Error::NotWellDefined(format!("{x:?} goes to {lhs:?} but should go to {:?}", h.image(x))));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary, simplex};

    fn nd(d: usize, i: usize) -> NormalSimplex {
        NormalSimplex::nondegenerate(SimplexId::new(d, i))
    }

    #[test]
    fn identify_endpoints_of_interval() {
        let d1 = Arc::new(simplex(1));
        let q = quotient(&d1, &[(nd(0, 0), nd(0, 1))]).unwrap();
        assert_eq!(q.set.counts(), &[1, 1]);
        assert!(!q.set.is_nonsingular());
        assert!(q.map.is_valid());
    }

    #[test]
    fn collapsing_an_edge_makes_it_degenerate() {
        let d1 = Arc::new(simplex(1));
        let e = nd(1, 0);
        let deg = NormalSimplex { base: SimplexId::new(0, 0), degeneracy: Operator::degeneracy(0, 1) };
        let q = quotient(&d1, &[(e, deg)]).unwrap();
        assert_eq!(q.set.counts(), &[1]);
    }

    #[test]
    fn no_relations_is_identity() {
        let d2 = Arc::new(simplex(2));
        let q = quotient(&d2, &[]).unwrap();
        assert_eq!(*q.set, *d2);
        assert_eq!(q.map, SimpMap::identity(&d2).retarget(&q.set));
    }

    #[test]
    fn boundary_to_point() {
        let d2 = Arc::new(simplex(2));
        let rel: Vec<_> = (1..3).map(|i| (nd(0, 0), nd(0, i))).collect();
        let q = quotient(&d2, &rel).unwrap();
        // vertices identified, edges stay nondegenerate
        assert_eq!(q.set.counts(), &[1, 3, 1]);
        let b = Arc::new(boundary(2));
        assert!(quotient(&b, &[(nd(0, 0), nd(1, 0))]).is_err());
    }

    #[test]
    fn descend_through_quotient() {
        let d1 = Arc::new(simplex(1));
        let pt = Arc::new(simplex(0));
        let q = quotient(&d1, &[(nd(0, 0), nd(0, 1))]).unwrap();
        let h = SimpMap::to_point(&d1, &pt).unwrap();
        let g = descend(&q.map, &h).unwrap();
        assert_eq!(g.compose(&q.map).unwrap(), h);
        let id = SimpMap::identity(&d1);
        assert!(matches!(descend(&q.map, &id), Err(Error::NotWellDefined(_))));
    }
}
