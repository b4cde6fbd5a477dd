//! Finite posets, their nerves, the face poset `X^♯` of a simplicial set, and
//! the poset reflection `pc` of its categorification.

use std::collections::HashMap;
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::delta::Operator;
use crate::error::{Error, Result};
use crate::sset::{FinSimpSet, NormalSimplex, SimpMap, SimplexId};

/// A finite partial order on `0..size`, stored as a dense relation matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct FinPoset {
    leq: Vec<Vec<bool>>,
    labels: Vec<String>,
}

impl std::fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinPoset(size {}, {:?})", self.size(), self.hasse())
    }
}

impl FinPoset {
    /// The partial order generated by `pairs` (reflexive-transitive closure);
    /// fails if the closure is not antisymmetric.
    pub fn from_relation(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; size]; size];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(Error::Range(format!("pair ({a}, {b}) outside a poset of size {size}")));
            }
            leq[a][b] = true;
        }
        // Warshall
        for k in 0..size {
            for i in 0..size {
                if leq[i][k] {
                    for j in 0..size {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        let p = FinPoset { leq, labels: Vec::new() };
        if !p.is_antisymmetric() {
            return Err(Error::Malformed("relation has a cycle".into()));
        }
        Ok(p)
    }

    /// A relation matrix taken as is; all three axioms are checked.
    pub fn from_matrix(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if leq.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("relation matrix is not square".into()));
        }
        let p = FinPoset { leq, labels: Vec::new() };
        if !(p.is_reflexive() && p.is_antisymmetric() && p.is_transitive()) {
            return Err(Error::Malformed("not a partial order".into()));
        }
        Ok(p)
    }

    /// `[n] = {0 < 1 < ... < n}`.
    pub fn chain(n: usize) -> Self {
        let leq = (0..=n).map(|i| (0..=n).map(|j| i <= j).collect()).collect();
        FinPoset { leq, labels: Vec::new() }
    }

    pub fn antichain(k: usize) -> Self {
        let leq = (0..k).map(|i| (0..k).map(|j| i == j).collect()).collect();
        FinPoset { leq, labels: Vec::new() }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size());
        self.labels = labels;
        self
    }

    pub fn label(&self, a: usize) -> Option<&str> {
        self.labels.get(a).map(|s| s.as_str())
    }

    pub fn size(&self) -> usize {
        self.leq.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// All related pairs `a <= b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n).flat_map(|a| (0..n).filter(move |&b| self.leq[a][b]).map(move |b| (a, b))).collect()
    }

    /// Covering pairs `a < b` with nothing strictly between.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|i| self.leq[i][i])
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| !self.leq[i][j] || (0..n).all(|k| !self.leq[j][k] || self.leq[i][k])))
    }

    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.size()).filter(|&b| self.leq[b][a]).collect()
    }

    pub fn up_set(&self, a: usize) -> Vec<usize> {
        (0..self.size()).filter(|&b| self.leq[a][b]).collect()
    }

    /// Length of the longest chain, counted in elements.
    pub fn height(&self) -> usize {
        let n = self.size();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| self.down_set(a).len());
        let mut h = vec![1usize; n];
        for &b in &order {
            for &a in &order {
                if self.lt(a, b) {
                    h[b] = h[b].max(h[a] + 1);
                }
            }
        }
        h.into_iter().max().unwrap_or(0)
    }

    /// The full subposet on `elements` (in the given order).
    pub fn subposet(&self, elements: &[usize]) -> FinPoset {
        let leq = elements.iter().map(|&a| elements.iter().map(|&b| self.leq[a][b]).collect()).collect();
        let labels = if self.labels.is_empty() {
            Vec::new()
        } else {
            elements.iter().map(|&a| self.labels[a].clone()).collect()
        };
        FinPoset { leq, labels }
    }

    /// `P × Q` with `(a, b)` at index `a * |Q| + b`.
    pub fn product(&self, other: &FinPoset) -> FinPoset {
        let (n, m) = (self.size(), other.size());
        let leq = (0..n * m)
            .map(|x| (0..n * m).map(|y| self.leq[x / m][y / m] && other.leq[x % m][y % m]).collect())
            .collect();
        FinPoset { leq, labels: Vec::new() }
    }
}

/// An order-preserving map of finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    pub source: FinPoset,
    pub target: FinPoset,
    pub images: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: FinPoset, target: FinPoset, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.size() || images.iter().any(|&v| v >= target.size()) {
            return Err(Error::InvalidMap("image list does not fit the posets".into()));
        }
        let f = MonotoneMap { source, target, images };
        if !f.is_monotone() {
            return Err(Error::InvalidMap("map is not order preserving".into()));
        }
        Ok(f)
    }

    pub fn identity(p: &FinPoset) -> Self {
        MonotoneMap { source: p.clone(), target: p.clone(), images: (0..p.size()).collect() }
    }

    pub fn is_monotone(&self) -> bool {
        self.source.pairs().into_iter().all(|(a, b)| self.target.leq(self.images[a], self.images[b]))
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MonotoneMap) -> Result<MonotoneMap> {
        if inner.target != self.source {
            return Err(Error::Composition("posets do not match".into()));
        }
        Ok(MonotoneMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            images: inner.images.iter().map(|&a| self.images[a]).collect(),
        })
    }
}

/// The nerve of a poset together with the chain behind each simplex.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub set: Arc<FinSimpSet>,
    /// `chains[n][i]`: the strictly increasing chain of the simplex `n/i`.
    pub chains: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, SimplexId>,
}

impl Nerve {
    pub fn new(p: &FinPoset) -> Nerve {
        let n = p.size();
        let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut level: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
        while !level.is_empty() {
            let mut next = Vec::new();
            for c in &level {
                let last = *c.last().unwrap();
                for b in 0..n {
                    if p.lt(last, b) {
                        let mut d = c.clone();
                        d.push(b);
                        next.push(d);
                    }
                }
            }
            next.sort();
            chains.push(std::mem::replace(&mut level, next));
        }
        let mut index = HashMap::new();
        for (d, level) in chains.iter().enumerate() {
            for (i, c) in level.iter().enumerate() {
                index.insert(c.clone(), SimplexId::new(d, i));
            }
        }
        let faces = chains
            .iter()
            .enumerate()
            .map(|(d, level)| {
                level
                    .iter()
                    .map(|c| {
                        if d == 0 {
                            return Vec::new();
                        }
                        (0..=d)
                            .map(|j| {
                                let mut f = c.clone();
                                f.remove(j);
                                NormalSimplex::nondegenerate(index[&f])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let counts = chains.iter().map(|l| l.len()).collect();
        let mut set = FinSimpSet::new_unchecked(counts, faces).expect("nerve is well formed");
        if !p.labels.is_empty() {
            for (d, level) in chains.iter().enumerate() {
                for (i, c) in level.iter().enumerate() {
                    let ls: Vec<&str> = c.iter().map(|&a| p.labels[a].as_str()).collect();
                    set.set_label(SimplexId::new(d, i), ls.join(" < "));
                }
            }
        }
        Nerve { set: Arc::new(set), chains, index }
    }

    pub fn simplex_of_chain(&self, chain: &[usize]) -> Option<SimplexId> {
        self.index.get(chain).copied()
    }

    pub fn chain(&self, id: SimplexId) -> &[usize] {
        &self.chains[id.dim][id.index]
    }

    /// The simplex with a given weakly increasing vertex sequence.
    pub fn simplex_from_sequence(&self, seq: &[usize]) -> Option<NormalSimplex> {
        let mut chain: Vec<usize> = Vec::with_capacity(seq.len());
        let mut degeneracy = Vec::with_capacity(seq.len());
        for &a in seq {
            if chain.last() != Some(&a) {
                chain.push(a);
            }
            degeneracy.push(chain.len() - 1);
        }
        let base = self.simplex_of_chain(&chain)?;
        Some(NormalSimplex { base, degeneracy: Operator::from_images_unchecked(base.dim, degeneracy) })
    }
}

pub fn nerve(p: &FinPoset) -> FinSimpSet {
    (*Nerve::new(p).set).clone()
}

/// `N(f)` between given nerves of the source and target of `f`.
pub fn nerve_map(f: &MonotoneMap, source: &Nerve, target: &Nerve) -> SimpMap {
    let images = source
        .chains
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|c| {
                    let seq: Vec<usize> = c.iter().map(|&a| f.images[a]).collect();
                    target.simplex_from_sequence(&seq).expect("monotone image of a chain is a chain")
                })
                .collect()
        })
        .collect();
    SimpMap::new_unchecked(source.set.clone(), target.set.clone(), images)
}

/// The face poset `X^♯`, elements in the dimension-major order of
/// [`FinSimpSet::global_index`].
pub fn sharp(x: &FinSimpSet) -> FinPoset {
    let n = x.total_nondegenerate();
    let mut leq = vec![vec![false; n]; n];
    let ids: Vec<SimplexId> = x.ids().collect();
    for (k, &id) in ids.iter().enumerate() {
        leq[k][k] = true;
        if id.dim == 0 {
            continue;
        }
        for j in 0..=id.dim {
            let f = x.global_index(x.face(id, j).base);
            for b in 0..n {
                if leq[b][f] {
                    leq[b][k] = true;
                }
            }
        }
    }
    let labels = ids.iter().map(|&id| x.label(id).map(str::to_string).unwrap_or_else(|| format!("{id:?}"))).collect();
    FinPoset { leq, labels }
}

/// `f^♯ : x ↦ f(x)^♯`.
pub fn sharp_map(f: &SimpMap) -> MonotoneMap {
    let (s, t) = (f.source(), f.target());
    let images = s.ids().map(|x| t.global_index(f.image(x).base)).collect();
    MonotoneMap { source: sharp(s), target: sharp(t), images }
}

pub fn is_sieve(p: &FinPoset, s: &[usize]) -> bool {
    let mut member = vec![false; p.size()];
    for &a in s {
        member[a] = true;
    }
    s.iter().all(|&a| p.down_set(a).into_iter().all(|b| member[b]))
}

pub fn is_cosieve(p: &FinPoset, s: &[usize]) -> bool {
    let mut member = vec![false; p.size()];
    for &a in s {
        member[a] = true;
    }
    s.iter().all(|&a| p.up_set(a).into_iter().all(|b| member[b]))
}

/// `pc(X)` and the class of every vertex.
///
/// Vertices are preordered by reachability along the edges `xδ₁ -> xδ₀`;
/// strongly connected classes are collapsed, and classes are numbered by their
/// smallest vertex.
pub fn pc_with_classes(x: &FinSimpSet) -> (FinPoset, Vec<usize>) {
    let nv = x.count(0);
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(nv, x.count(1));
    let nodes: Vec<_> = (0..nv).map(|_| g.add_node(())).collect();
    for e in x.ids_of_dim(1) {
        let v = x.vertices(e);
        g.add_edge(nodes[v[0]], nodes[v[1]], ());
    }
    let mut comps: Vec<Vec<usize>> =
        tarjan_scc(&g).into_iter().map(|c| c.into_iter().map(|n| n.index()).collect()).collect();
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort();
    let mut class = vec![0; nv];
    for (k, c) in comps.iter().enumerate() {
        for &v in c {
            class[v] = k;
        }
    }
    let pairs: Vec<(usize, usize)> = x
        .ids_of_dim(1)
        .map(|e| {
            let v = x.vertices(e);
            (class[v[0]], class[v[1]])
        })
        .collect();
    let p = FinPoset::from_relation(comps.len(), &pairs).expect("condensation is acyclic");
    (p, class)
}

pub fn pc(x: &FinSimpSet) -> FinPoset {
    pc_with_classes(x).0
}

/// An order isomorphism `p -> q` if one exists.
pub fn poset_iso(p: &FinPoset, q: &FinPoset) -> Option<MonotoneMap> {
    let n = p.size();
    if n != q.size() {
        return None;
    }
    let sig = |r: &FinPoset, a: usize| (r.down_set(a).len(), r.up_set(a).len());
    let sp: Vec<_> = (0..n).map(|a| sig(p, a)).collect();
    let sq: Vec<_> = (0..n).map(|a| sig(q, a)).collect();
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    // elements with many relations first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(sp[x].0 + sp[x].1));
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        p: &FinPoset,
        q: &FinPoset,
        sp: &[(usize, usize)],
        sq: &[(usize, usize)],
        img: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in 0..q.size() {
            if used[y] || sp[x] != sq[y] {
                continue;
            }
            let ok = order[..k].iter().all(|&z| p.leq(x, z) == q.leq(y, img[z]) && p.leq(z, x) == q.leq(img[z], y));
            if !ok {
                continue;
            }
            img[x] = y;
            used[y] = true;
            if go(k + 1, order, p, q, sp, sq, img, used) {
                return true;
            }
            used[y] = false;
        }
        false
    }
    if go(0, &order, p, q, &sp, &sq, &mut img, &mut used) {
        Some(MonotoneMap { source: p.clone(), target: q.clone(), images: img })
    } else {
        None
    }
}
