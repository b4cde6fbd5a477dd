//! Desingularization `D X` and its unit `η : X -> D X`.
//!
//! While some nondegenerate `x` has equal vertices `i < j`, impose
//! `x ~ x·(μρ)` where `ρ : [n] -> [n - (j - i)]` collapses the interval
//! `[i..j]` and `μ` is its minimal section, then pass to the quotient. In a
//! non-singular quotient the vertices `i` and `j` of the image of `x` agree,
//! so by monotonicity the whole interval collapses there too: every relation
//! imposed holds in every non-singular quotient. The result is therefore the
//! finest non-singular quotient. Each step strictly lowers the number of
//! nondegenerate simplices, so the loop terminates.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::colimit::{collapse, complement_full, eden_characteristic, end_fiber, is_abyss, is_eden, Subcomplex};
use crate::delta::Operator;
use crate::error::{Error, Result};
use crate::quotient::quotient;
use crate::sset::{FinSimpSet, NormalSimplex, SimpMap, SimplexId};

/// One forced collapse: the simplex (in the set current at that step), the
/// pair of equal vertices, and the size after the quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesingStep {
    pub round: usize,
    pub dim: usize,
    pub index: usize,
    pub i: usize,
    pub j: usize,
    pub counts_after: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DesingResult {
    pub dx: Arc<FinSimpSet>,
    pub eta: SimpMap,
    pub steps: Vec<DesingStep>,
}

/// Which offending simplex and vertex pair is collapsed first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// smallest `(dim, index, i, j)`
    First,
    /// largest `(dim, index, i, j)`
    Last,
}

fn offending(x: &FinSimpSet, order: TieBreak) -> Option<(SimplexId, usize, usize)> {
    let pick = |id: SimplexId| -> Option<(usize, usize)> {
        let vs = x.vertices(id);
        let n = vs.len();
        let mut pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| vs[i] == vs[j]);
        match order {
            TieBreak::First => pairs.next(),
            TieBreak::Last => pairs.next_back(),
        }
    };
    match order {
        TieBreak::First => x.ids().find_map(|id| pick(id).map(|(i, j)| (id, i, j))),
        TieBreak::Last => {
            let ids: Vec<SimplexId> = x.ids().collect();
            ids.into_iter().rev().find_map(|id| pick(id).map(|(i, j)| (id, i, j)))
        }
    }
}

/// Batched desingularization: each round imposes, for every offending
/// simplex at once, the collapse of its first pair of equal vertices. Every
/// such relation holds in every non-singular quotient, so the result is the
/// same as one collapse at a time, with far fewer quotients.
pub fn desingularize(x: &Arc<FinSimpSet>) -> Result<DesingResult> {
    let mut cur = x.clone();
    let mut eta = SimpMap::identity(x);
    let mut steps = Vec::new();
    let mut round = 0;
    loop {
        let mut relations = Vec::new();
        let mut imposed = Vec::new();
        for id in cur.ids() {
            let vs = cur.vertices(id);
            let n = vs.len();
            let Some((i, j)) = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| vs[i] == vs[j])
            else {
                continue;
            };
            let rho = Operator::interval_collapse(id.dim, i, j);
            let mu = rho.minimal_section()?;
            let s = NormalSimplex::nondegenerate(id);
            let t = cur.act(&s, &mu.compose(&rho)?)?;
            relations.push((s, t));
            imposed.push((id, i, j));
        }
        if relations.is_empty() {
            break;
        }
        let q = quotient(&cur, &relations)?;
        if q.set.total_nondegenerate() >= cur.total_nondegenerate() {
            return Err(Error::Internal(format!("desingularization round {round} made no progress")));
        }
        eta = q.map.compose(&eta)?;
        for (id, i, j) in imposed {
            steps.push(DesingStep { round, dim: id.dim, index: id.index, i, j, counts_after: q.set.counts().to_vec() });
        }
        cur = q.set;
        round += 1;
    }
    Ok(DesingResult { dx: cur, eta, steps })
}

/// One collapse per quotient, the offending simplex and pair chosen by `order`.
pub fn desingularize_with(x: &Arc<FinSimpSet>, order: TieBreak) -> Result<DesingResult> {
    let mut cur = x.clone();
    let mut eta = SimpMap::identity(x);
    let mut steps = Vec::new();
    while let Some((id, i, j)) = offending(&cur, order) {
        let n = id.dim;
        let rho = Operator::interval_collapse(n, i, j);
        let mu = rho.minimal_section()?;
        let s = NormalSimplex::nondegenerate(id);
        let t = cur.act(&s, &mu.compose(&rho)?)?;
        let q = quotient(&cur, &[(s, t)])?;
        if q.set.total_nondegenerate() >= cur.total_nondegenerate() {
            return Err(Error::Internal(format!("collapse of {id:?} at ({i}, {j}) made no progress")));
        }
        eta = q.map.compose(&eta)?;
        steps.push(DesingStep {
            round: steps.len(),
            dim: id.dim,
            index: id.index,
            i,
            j,
            counts_after: q.set.counts().to_vec(),
        });
        cur = q.set;
    }
    Ok(DesingResult { dx: cur, eta, steps })
}

/// Brute-force desingularization for tiny inputs: the finest congruence with a
/// non-singular quotient, found among all congruences.
///
/// A quotient of `X` has dimension at most `dim X`, so it is determined by
/// its truncation to degrees `<= dim X`; hence every congruence is generated by
/// its pairs in those degrees, and the lattice is explored by adding such
/// pairs one at a time, starting from the discrete congruence.
pub fn desing_oracle(x: &Arc<FinSimpSet>) -> Result<Arc<FinSimpSet>> {
    let dim = x.dim().unwrap_or(0);
    if x.total_nondegenerate() > 6 || dim > 2 {
        return Err(Error::Guard(format!(
            "oracle needs at most 6 nondegenerate simplices and dimension <= 2, got {:?}",
            x.counts()
        )));
    }
    if x.is_empty() {
        return Ok(x.clone());
    }
    let top = dim + 2;
    let levels: Vec<Vec<NormalSimplex>> = (0..=top).map(|n| x.simplices_of_degree(n)).collect();
    let pos: Vec<HashMap<NormalSimplex, usize>> =
        levels.iter().map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    // act[n][p] = list of (m, position) for every operator [m] -> [n], m <= top
    let act: Vec<Vec<Vec<(usize, usize)>>> = (0..=top)
        .map(|n| {
            levels[n]
                .iter()
                .map(|s| {
                    (0..=top)
                        .flat_map(|m| Operator::all(m, n).into_iter().map(move |a| (m, a)))
                        .map(|(m, a)| (m, pos[m][&x.act(s, &a).unwrap()]))
                        .collect()
                })
                .collect()
        })
        .collect();
    type Partition = Vec<Vec<usize>>;
    let close = |start: &Partition, extra: Option<(usize, usize, usize)>| -> Partition {
        let mut ufs: Vec<UnionFind<usize>> = levels.iter().map(|l| UnionFind::new(l.len())).collect();
        let mut work = Vec::new();
        for (n, labels) in start.iter().enumerate() {
            let mut first: HashMap<usize, usize> = HashMap::new();
            for (p, &c) in labels.iter().enumerate() {
                let r = *first.entry(c).or_insert(p);
                if r != p && ufs[n].union(r, p) {
                    work.push((n, r, p));
                }
            }
        }
        if let Some((n, a, b)) = extra {
            if ufs[n].union(a, b) {
                work.push((n, a, b));
            }
        }
        while let Some((n, a, b)) = work.pop() {
            for k in 0..act[n][a].len() {
                let (m, fa) = act[n][a][k];
                let (_, fb) = act[n][b][k];
                if ufs[m].union(fa, fb) {
                    work.push((m, fa, fb));
                }
            }
        }
        ufs.iter_mut()
            .map(|uf| {
                let mut names: HashMap<usize, usize> = HashMap::new();
                (0..uf.len())
                    .map(|p| {
                        let r = uf.find_mut(p);
                        let k = names.len();
                        *names.entry(r).or_insert(k)
                    })
                    .collect()
            })
            .collect()
    };
    let discrete: Partition = levels.iter().map(|l| (0..l.len()).collect()).collect();
    let mut seen: BTreeSet<Partition> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(discrete.clone());
    queue.push_back(discrete.clone());
    let mut good: Vec<Partition> = Vec::new();
    while let Some(c) = queue.pop_front() {
        if oracle_quotient(x, &levels, &pos, &c)?.is_nonsingular() {
            good.push(c.clone());
        }
        for n in 0..=dim {
            for pa in 0..levels[n].len() {
                for pb in pa + 1..levels[n].len() {
                    if c[n][pa] == c[n][pb] {
                        continue;
                    }
                    let next = close(&c, Some((n, pa, pb)));
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    // meet of all congruences with a non-singular quotient
    let meet: Partition = (0..=top)
        .map(|n| {
            let mut names: HashMap<Vec<usize>, usize> = HashMap::new();
            (0..levels[n].len())
                .map(|p| {
                    let key: Vec<usize> = good.iter().map(|c| c[n][p]).collect();
                    let k = names.len();
                    *names.entry(key).or_insert(k)
                })
                .collect()
        })
        .collect();
    let meet = close(&meet, None);
    let q = oracle_quotient(x, &levels, &pos, &meet)?;
    if !q.is_nonsingular() {
        return Err(Error::Internal("meet of non-singular quotients is singular".into()));
    }
    Ok(Arc::new(q))
}

/// The quotient for a congruence given as class labels per degree, with its
/// own renormalization (independent of the `quotient` module).
fn oracle_quotient(
    x: &FinSimpSet,
    levels: &[Vec<NormalSimplex>],
    pos: &[HashMap<NormalSimplex, usize>],
    c: &[Vec<usize>],
) -> Result<FinSimpSet> {
    let dim = x.dim().unwrap();
    let mut normal: Vec<HashMap<usize, NormalSimplex>> = Vec::new();
    let mut counts = Vec::new();
    let mut reps: Vec<Vec<NormalSimplex>> = Vec::new();
    for n in 0..=dim {
        let classes: BTreeSet<usize> = c[n].iter().copied().collect();
        let mut nf: HashMap<usize, NormalSimplex> = HashMap::new();
        let mut r = Vec::new();
        for &k in &classes {
            let members: Vec<&NormalSimplex> =
                (0..levels[n].len()).filter(|&p| c[n][p] == k).map(|p| &levels[n][p]).collect();
            if let Some(d) = members.iter().find(|s| s.is_degenerate()) {
                let b = &normal[d.base.dim][&c[d.base.dim][pos[d.base.dim][&NormalSimplex::nondegenerate(d.base)]]];
                nf.insert(k, NormalSimplex { base: b.base, degeneracy: b.degeneracy.compose(&d.degeneracy)? });
            } else {
                nf.insert(k, NormalSimplex::nondegenerate(SimplexId::new(n, r.len())));
                r.push(members[0].clone());
            }
        }
        counts.push(r.len());
        reps.push(r);
        normal.push(nf);
    }
    let faces = (0..=dim)
        .map(|n| {
            reps[n]
                .iter()
                .map(|s| {
                    if n == 0 {
                        return Ok(Vec::new());
                    }
                    (0..=n)
                        .map(|j| {
                            let f = x.act(s, &Operator::face(j, n))?;
                            Ok(normal[n - 1][&c[n - 1][pos[n - 1][&f]]].clone())
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FinSimpSet::new(counts, faces)
}

/// Outcome of the four checks around `V ⊆ X -> X/A -> D(X/A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    /// `V -> D(X/A)` is degreewise injective
    pub v_embeds: bool,
    /// its image is an abyss
    pub v_abyss: bool,
    /// the collapsed point and `V` are the two fibres of a map to `Δ[1]`
    pub fibres: bool,
    /// `η` is a bijection on vertices
    pub vertices_preserved: bool,
    pub v_vertices: usize,
    pub dxa_counts: Vec<usize>,
}

impl CollapseReport {
    pub fn passed(&self) -> bool {
        self.v_embeds && self.v_abyss && self.fibres && self.vertices_preserved
    }
}

pub fn verify_collapse_structure(a: &Subcomplex) -> Result<CollapseReport> {
    let x = a.ambient();
    if !x.is_nonsingular() {
        return Err(Error::Precondition("ambient set is singular".into()));
    }
    if !is_eden(a) {
        return Err(Error::Precondition("subset is not an eden".into()));
    }
    let v = complement_full(a);
    let (_, v_inc) = v.inclusion();
    let xa = collapse(a)?;
    let d = desingularize(&xa.apex)?;
    let to_d = d.eta.compose(&xa.left_leg)?.compose(&v_inc)?;
    let v_embeds = to_d.is_degreewise_injective();
    let image = Subcomplex::image(&to_d);
    let v_abyss = is_abyss(&image);
    let point = d.eta.compose(&xa.right_leg)?;
    let pt = Subcomplex::image(&point);
    let fibres = match eden_characteristic(&pt) {
        Ok(chi) => end_fiber(&chi, 0)? == pt && end_fiber(&chi, 1)? == image,
        Err(_) => false,
    };
    let vertices_preserved = d.dx.count(0) == xa.apex.count(0);
    Ok(CollapseReport {
        v_embeds,
        v_abyss,
        fibres,
        vertices_preserved,
        v_vertices: v.vertices().len(),
        dxa_counts: d.dx.counts().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use crate::sset::{boundary, simplex};
    use crate::subdivision::sd;

    fn sphere(n: usize) -> Arc<FinSimpSet> {
        let d = Arc::new(simplex(n));
        collapse(&Subcomplex::new(&d, d.ids().filter(|x| x.dim < n)).unwrap()).unwrap().apex
    }

    fn edge_collapse() -> Arc<FinSimpSet> {
        let d2 = Arc::new(simplex(2));
        collapse(&Subcomplex::generated(&d2, [SimplexId::new(1, 0)]).unwrap()).unwrap().apex
    }

    #[test]
    fn spheres_collapse_to_a_point() {
        for n in 1..=3 {
            let r = desingularize(&sphere(n)).unwrap();
            assert_eq!(r.dx.counts(), &[1], "n = {n}");
            assert!(r.eta.is_valid());
        }
    }

    #[test]
    fn subdivided_sphere() {
        let r = desingularize(&sd(&sphere(2)).unwrap()).unwrap();
        assert!(are_isomorphic(&r.dx, &Arc::new(simplex(1))).is_some());
    }

    #[test]
    fn edge_collapse_single_step() {
        let r = desingularize(&edge_collapse()).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!((r.steps[0].i, r.steps[0].j), (0, 1));
        assert!(are_isomorphic(&r.dx, &Arc::new(simplex(1))).is_some());
    }

    #[test]
    fn nonsingular_input_is_untouched() {
        let b = Arc::new(boundary(3));
        let r = desingularize(&b).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.eta, SimpMap::identity(&b));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(desing_oracle(&sphere(1)).unwrap().counts(), &[1]);
        let d1 = Arc::new(simplex(1));
        assert_eq!(*desing_oracle(&d1).unwrap(), *d1);
        let o = desing_oracle(&edge_collapse()).unwrap();
        assert!(are_isomorphic(&o, &Arc::new(simplex(1))).is_some());
        assert!(matches!(desing_oracle(&Arc::new(simplex(3))), Err(Error::Guard(_))));
    }

    #[test]
    fn collapse_structure_on_triangle() {
        let d2 = Arc::new(simplex(2));
        let a = Subcomplex::generated(&d2, [SimplexId::new(1, 0)]).unwrap();
        let r = verify_collapse_structure(&a).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.dxa_counts, vec![2, 1]);
        assert_eq!(r.v_vertices, 1);
        let d1 = Arc::new(simplex(1));
        let r = verify_collapse_structure(&Subcomplex::generated(&d1, [SimplexId::new(0, 0)]).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.dxa_counts, vec![2, 1]);
    }
}
