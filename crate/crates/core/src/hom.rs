//! Enumerating simplicial maps between finite simplicial sets.

use std::sync::Arc;

use crate::delta::Operator;
use crate::sset::{FinSimpSet, NormalSimplex, SimpMap, SimplexId};

struct Candidates {
    /// per degree: every simplex of `Y` with its codimension-one faces
    by_degree: Vec<Vec<(NormalSimplex, Vec<NormalSimplex>)>>,
}

impl Candidates {
    fn new(y: &FinSimpSet, top: usize) -> Self {
        let by_degree = (0..=top)
            .map(|n| {
                y.simplices_of_degree(n)
                    .into_iter()
                    .map(|s| {
                        let faces = if n == 0 {
                            Vec::new()
                        } else {
                            (0..=n).map(|j| y.act(&s, &Operator::face(j, n)).expect("face of a simplex")).collect()
                        };
                        (s, faces)
                    })
                    .collect()
            })
            .collect();
        Candidates { by_degree }
    }
}

/// Depth-first search over maps `x -> y`, visiting candidates for each
/// simplex in the order chosen by `order`; stops after `limit` maps.
pub fn search_maps(
    x: &Arc<FinSimpSet>,
    y: &Arc<FinSimpSet>,
    limit: usize,
    order: &mut dyn FnMut(&mut Vec<usize>),
) -> Vec<SimpMap> {
    search_maps_with(x, y, limit, false, order)
}

/// As [`search_maps`], optionally keeping only maps injective on vertices.
pub fn search_maps_with(
    x: &Arc<FinSimpSet>,
    y: &Arc<FinSimpSet>,
    limit: usize,
    injective_on_vertices: bool,
    order: &mut dyn FnMut(&mut Vec<usize>),
) -> Vec<SimpMap> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    let ids: Vec<SimplexId> = x.ids().collect();
    let cands = Candidates::new(y, x.dim().unwrap_or(0));
    let mut images: Vec<Vec<Option<NormalSimplex>>> = x.counts().iter().map(|&c| vec![None; c]).collect();
    fn go(
        k: usize,
        ids: &[SimplexId],
        x: &Arc<FinSimpSet>,
        y: &Arc<FinSimpSet>,
        cands: &Candidates,
        images: &mut Vec<Vec<Option<NormalSimplex>>>,
        out: &mut Vec<SimpMap>,
        limit: usize,
        injective: bool,
        order: &mut dyn FnMut(&mut Vec<usize>),
    ) {
        if out.len() >= limit {
            return;
        }
        let Some(&id) = ids.get(k) else {
            let imgs = images.iter().map(|row| row.iter().map(|s| s.clone().unwrap()).collect()).collect();
            out.push(SimpMap::new(x.clone(), y.clone(), imgs).expect("faces were matched"));
            return;
        };
        let n = id.dim;
        let wanted: Vec<NormalSimplex> = (0..if n == 0 { 0 } else { n + 1 })
            .map(|j| {
                let f = x.face(id, j);
                images[f.base.dim][f.base.index].as_ref().unwrap().degenerate_by(&f.degeneracy)
            })
            .collect();
        let level = &cands.by_degree[n];
        let mut fits: Vec<usize> = (0..level.len())
            .filter(|&c| level[c].1 == wanted)
            .filter(|&c| !(injective && n == 0 && images[0].iter().any(|v| v.as_ref() == Some(&level[c].0))))
            .collect();
        order(&mut fits);
        for c in fits {
            images[n][id.index] = Some(level[c].0.clone());
            go(k + 1, ids, x, y, cands, images, out, limit, injective, order);
            if out.len() >= limit {
                break;
            }
        }
        images[n][id.index] = None;
    }
    go(0, &ids, x, y, &cands, &mut images, &mut out, limit, injective_on_vertices, order);
    out
}

/// Up to `limit` simplicial maps `x -> y`, in a fixed order.
pub fn enumerate_maps(x: &Arc<FinSimpSet>, y: &Arc<FinSimpSet>, limit: usize) -> Vec<SimpMap> {
    search_maps(x, y, limit, &mut |_| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary, simplex};

    #[test]
    fn counts_of_maps() {
        let d1 = Arc::new(simplex(1));
        let d2 = Arc::new(simplex(2));
        // maps Δ[1] -> Δ[2] are monotone maps [1] -> [2]
        assert_eq!(enumerate_maps(&d1, &d2, usize::MAX).len(), 6);
        // maps Δ[2] -> Δ[1]: monotone maps [2] -> [1]
        assert_eq!(enumerate_maps(&d2, &d1, usize::MAX).len(), 4);
        // ∂Δ[2] -> Δ[1]: any vertex labelling that is monotone along each edge
        assert_eq!(enumerate_maps(&Arc::new(boundary(2)), &d1, usize::MAX).len(), 4);
        assert_eq!(enumerate_maps(&d2, &d2, 3).len(), 3);
        let e = Arc::new(FinSimpSet::empty());
        assert_eq!(enumerate_maps(&e, &d1, 5).len(), 1);
        assert!(enumerate_maps(&d1, &e, 5).is_empty());
        // injective on vertices: strictly monotone [1] -> [2]
        assert_eq!(search_maps_with(&d1, &d2, usize::MAX, true, &mut |_| {}).len(), 3);
    }
}
