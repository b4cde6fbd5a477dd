//! Finite simplicial sets in Eilenberg-Zilber normal form and simplicial maps.
//!
//! A [`FinSimpSet`] lists its nondegenerate simplices per dimension together
//! with a face table. Every simplex is a [`NormalSimplex`]: a nondegenerate
//! base together with a surjective degeneracy operator. The right action of
//! an operator on a simplex is computed by factoring it into a degeneracy
//! followed by a face operator and walking the face table.
//!
//! A nondegenerate simplex is *embedded* when its representing map is
//! degreewise injective. This is decided by checking that its vertices are
//! pairwise distinct: a degenerate simplex always has two equal adjacent
//! vertices, so distinct vertices force every face to be nondegenerate with
//! distinct vertex sets, hence injectivity in every degree. The converse is
//! immediate. The brute-force check in the tests guards this reduction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::delta::Operator;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

impl SimplexId {
    pub fn new(dim: usize, index: usize) -> Self {
        SimplexId { dim, index }
    }
}

impl fmt::Debug for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.dim, self.index)
    }
}

/// `base · degeneracy`, with `degeneracy : [degree] -> [base.dim]` surjective.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalSimplex {
    pub base: SimplexId,
    pub degeneracy: Operator,
}

impl NormalSimplex {
    pub fn nondegenerate(base: SimplexId) -> Self {
        NormalSimplex { base, degeneracy: Operator::identity(base.dim) }
    }

    pub fn new(base: SimplexId, degeneracy: Operator) -> Result<Self> {
        if degeneracy.target_dim() != base.dim || !degeneracy.is_surjective() {
            return Err(Error::Operator(format!("{degeneracy:?} is not a degeneracy onto dimension {}", base.dim)));
        }
        Ok(NormalSimplex { base, degeneracy })
    }

    /// The ambient degree.
    pub fn degree(&self) -> usize {
        self.degeneracy.source_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        self.base.dim != self.degeneracy.source_dim()
    }

    /// `self · σ` for a surjection `σ`; stays in normal form.
    pub fn degenerate_by(&self, sigma: &Operator) -> NormalSimplex {
        debug_assert!(sigma.is_surjective());
        NormalSimplex { base: self.base, degeneracy: self.degeneracy.compose_unchecked(sigma) }
    }

    pub fn encode(&self) -> String {
        let imgs: Vec<String> = self.degeneracy.images().iter().map(|v| v.to_string()).collect();
        format!("{}/{} : {}", self.base.dim, self.base.index, imgs.join(" "))
    }

    pub fn decode(s: &str) -> Result<Self> {
        let (head, tail) = s.split_once(':').ok_or_else(|| Error::Parse(format!("simplex `{s}` lacks ':'")))?;
        let (d, i) = head.trim().split_once('/').ok_or_else(|| Error::Parse(format!("simplex `{s}` lacks 'm/k'")))?;
        let dim: usize = d.trim().parse().map_err(|e| Error::Parse(format!("`{d}`: {e}")))?;
        let index: usize = i.trim().parse().map_err(|e| Error::Parse(format!("`{i}`: {e}")))?;
        let images = tail
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        NormalSimplex::new(SimplexId { dim, index }, Operator::new(dim, images)?)
    }
}

impl fmt::Debug for NormalSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "{:?}·{:?}", self.base, self.degeneracy.images())
        } else {
            write!(f, "{:?}", self.base)
        }
    }
}

/// A finite simplicial set.
#[derive(Clone)]
pub struct FinSimpSet {
    counts: Vec<usize>,
    /// `faces[n][i][j]` is the `j`-th face of the `i`-th nondegenerate `n`-simplex.
    faces: Vec<Vec<Vec<NormalSimplex>>>,
    /// `vertices[n][i][k]` is the index of the `k`-th vertex.
    vertices: Vec<Vec<Vec<usize>>>,
    labels: BTreeMap<SimplexId, String>,
}

impl PartialEq for FinSimpSet {
    fn eq(&self, other: &Self) -> bool {
        self.counts == other.counts && self.faces == other.faces
    }
}

impl Eq for FinSimpSet {}

impl fmt::Debug for FinSimpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSimpSet{:?}", self.counts)
    }
}

impl FinSimpSet {
    pub fn empty() -> Self {
        FinSimpSet { counts: Vec::new(), faces: Vec::new(), vertices: Vec::new(), labels: BTreeMap::new() }
    }

    /// Builds and validates a simplicial set from counts and face table.
    ///
    /// `faces[n]` must have `counts[n]` entries, each a list of `n + 1` faces
    /// (empty for `n = 0`). The simplicial identities are checked.
    pub fn new(counts: Vec<usize>, faces: Vec<Vec<Vec<NormalSimplex>>>) -> Result<Self> {
        let x = Self::build(counts, faces)?;
        x.check_identities()?;
        Ok(x)
    }

    /// Same as [`FinSimpSet::new`] without the simplicial identity check.
    pub(crate) fn new_unchecked(counts: Vec<usize>, faces: Vec<Vec<Vec<NormalSimplex>>>) -> Result<Self> {
        let x = Self::build(counts, faces)?;
        debug_assert!(x.check_identities().is_ok(), "{:?}", x.check_identities());
        Ok(x)
    }

    fn build(mut counts: Vec<usize>, mut faces: Vec<Vec<Vec<NormalSimplex>>>) -> Result<Self> {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        faces.truncate(counts.len());
        if faces.len() != counts.len() {
            return Err(Error::Malformed(format!(
                "face table has {} dimensions, counts {}",
                faces.len(),
                counts.len()
            )));
        }
        for (n, (fs, &c)) in faces.iter().zip(&counts).enumerate() {
            if fs.len() != c {
                return Err(Error::Malformed(format!("dimension {n}: {} entries for {c} simplices", fs.len())));
            }
            for (i, row) in fs.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if row.len() != expected {
                    return Err(Error::Malformed(format!("simplex {n}/{i} has {} faces", row.len())));
                }
                for face in row {
                    if face.degree() != n - 1 {
                        return Err(Error::Malformed(format!("face of {n}/{i} has degree {}", face.degree())));
                    }
                    let b = face.base;
                    if b.dim >= n || b.index >= counts[b.dim] || !face.degeneracy.is_surjective() {
                        return Err(Error::Malformed(format!("face {face:?} of {n}/{i} is invalid")));
                    }
                }
            }
        }
        let mut vertices: Vec<Vec<Vec<usize>>> = Vec::with_capacity(counts.len());
        for n in 0..counts.len() {
            let mut level = Vec::with_capacity(counts[n]);
            for i in 0..counts[n] {
                if n == 0 {
                    level.push(vec![i]);
                    continue;
                }
                let mut vs = Vec::with_capacity(n + 1);
                let last = &faces[n][i][n];
                for k in 0..n {
                    vs.push(vertices[last.base.dim][last.base.index][last.degeneracy.apply(k)]);
                }
                let first = &faces[n][i][0];
                vs.push(vertices[first.base.dim][first.base.index][first.degeneracy.apply(n - 1)]);
                level.push(vs);
            }
            vertices.push(level);
        }
        Ok(FinSimpSet { counts, faces, vertices, labels: BTreeMap::new() })
    }

    fn check_identities(&self) -> Result<()> {
        for n in 2..self.counts.len() {
            for i in 0..self.counts[n] {
                let x = NormalSimplex::nondegenerate(SimplexId::new(n, i));
                for j in 1..=n {
                    for k in 0..j {
                        // x δ_j δ_k = x δ_k δ_{j-1}
                        let a = self.act(&self.act(&x, &Operator::face(j, n))?, &Operator::face(k, n - 1))?;
                        let b = self.act(&self.act(&x, &Operator::face(k, n))?, &Operator::face(j - 1, n - 1))?;
                        if a != b {
                            return Err(Error::Malformed(format!(
                                "simplicial identity fails at {n}/{i}, faces {k} < {j}: {a:?} vs {b:?}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: BTreeMap<SimplexId, String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn set_label(&mut self, id: SimplexId, label: impl Into<String>) {
        self.labels.insert(id, label.into());
    }

    pub fn labels(&self) -> &BTreeMap<SimplexId, String> {
        &self.labels
    }

    pub fn label(&self, id: SimplexId) -> Option<&str> {
        self.labels.get(&id).map(|s| s.as_str())
    }

    /// `None` for the empty simplicial set.
    pub fn dim(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Nondegenerate simplex counts per dimension.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn total_nondegenerate(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.counts.iter().enumerate().flat_map(|(n, &c)| (0..c).map(move |i| SimplexId::new(n, i)))
    }

    pub fn ids_of_dim(&self, n: usize) -> impl Iterator<Item = SimplexId> {
        (0..self.count(n)).map(move |i| SimplexId::new(n, i))
    }

    /// Position of `id` in the dimension-major enumeration of all
    /// nondegenerate simplices.
    pub fn global_index(&self, id: SimplexId) -> usize {
        self.counts[..id.dim].iter().sum::<usize>() + id.index
    }

    pub fn global_id(&self, mut k: usize) -> SimplexId {
        for (n, &c) in self.counts.iter().enumerate() {
            if k < c {
                return SimplexId::new(n, k);
            }
            k -= c;
        }
        panic!("global index out of range")
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        id.index < self.count(id.dim)
    }

    pub(crate) fn check_id(&self, id: SimplexId) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(Error::UnknownSimplex { dim: id.dim, index: id.index })
        }
    }

    pub fn face_table(&self) -> &[Vec<Vec<NormalSimplex>>] {
        &self.faces
    }

    /// The `j`-th elementary face of a nondegenerate simplex of positive dimension.
    pub fn face(&self, x: SimplexId, j: usize) -> &NormalSimplex {
        &self.faces[x.dim][x.index][j]
    }

    /// Vertex indices of a nondegenerate simplex.
    pub fn vertices(&self, x: SimplexId) -> &[usize] {
        &self.vertices[x.dim][x.index]
    }

    /// Vertex sequence of an arbitrary simplex.
    pub fn vertex_sequence(&self, s: &NormalSimplex) -> Vec<usize> {
        let vs = self.vertices(s.base);
        s.degeneracy.images().iter().map(|&k| vs[k]).collect()
    }

    /// `s · a` in normal form.
    pub fn act(&self, s: &NormalSimplex, a: &Operator) -> Result<NormalSimplex> {
        if a.target_dim() != s.degree() {
            return Err(Error::Dimension(format!("operator {a:?} does not act on a simplex of degree {}", s.degree())));
        }
        self.check_id(s.base)?;
        Ok(self.act_unchecked(s, a))
    }

    pub(crate) fn act_unchecked(&self, s: &NormalSimplex, a: &Operator) -> NormalSimplex {
        let comp = s.degeneracy.compose_unchecked(a);
        if comp.is_identity() {
            return NormalSimplex::nondegenerate(s.base);
        }
        let (epi, mono) = comp.epi_mono_factor();
        let face = self.apply_face(s.base, &mono);
        NormalSimplex { base: face.base, degeneracy: face.degeneracy.compose_unchecked(&epi) }
    }

    /// `x · μ` for a nondegenerate `x` and an injective `μ`.
    pub(crate) fn apply_face(&self, x: SimplexId, mono: &Operator) -> NormalSimplex {
        if mono.is_identity() {
            return NormalSimplex::nondegenerate(x);
        }
        let imgs = mono.images();
        // smallest omitted index
        let j = imgs.iter().enumerate().find(|&(k, &v)| k != v).map(|(k, _)| k).unwrap_or(imgs.len());
        let rest: Vec<usize> = imgs.iter().map(|&v| if v > j { v - 1 } else { v }).collect();
        let rest = Operator::from_images_unchecked(x.dim - 1, rest);
        let face = &self.faces[x.dim][x.index][j];
        self.act_unchecked(face, &rest)
    }

    pub fn is_embedded(&self, x: SimplexId) -> Result<bool> {
        self.check_id(x)?;
        let vs = self.vertices(x);
        let mut seen = vs.to_vec();
        seen.sort_unstable();
        Ok(seen.windows(2).all(|w| w[0] != w[1]))
    }

    pub fn is_nonsingular(&self) -> bool {
        self.ids().all(|x| self.is_embedded(x).unwrap())
    }

    /// Nondegenerate simplices whose vertices are not pairwise distinct.
    pub fn non_embedded(&self) -> Vec<SimplexId> {
        self.ids().filter(|&x| !self.is_embedded(x).unwrap()).collect()
    }

    /// All simplices of degree `n`, grouped by base then by degeneracy in
    /// lexicographic order.
    pub fn simplices_of_degree(&self, n: usize) -> Vec<NormalSimplex> {
        let mut out = Vec::new();
        for k in 0..=n.min(self.counts.len().saturating_sub(1)) {
            if self.count(k) == 0 {
                continue;
            }
            let sur = Operator::surjections(n, k);
            for i in 0..self.counts[k] {
                for s in &sur {
                    out.push(NormalSimplex { base: SimplexId::new(k, i), degeneracy: s.clone() });
                }
            }
        }
        out
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.counts.clone()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts.iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Index lookup for all simplices up to a degree.
    pub(crate) fn degree_index(&self, max_degree: usize) -> DegreeIndex {
        DegreeIndex::new(self, max_degree)
    }
}

/// Enumeration of all simplices up to some degree, with reverse lookup.
pub(crate) struct DegreeIndex {
    pub simplices: Vec<Vec<NormalSimplex>>,
    pub lookup: Vec<HashMap<NormalSimplex, usize>>,
}

impl DegreeIndex {
    fn new(x: &FinSimpSet, max_degree: usize) -> Self {
        let mut simplices = Vec::with_capacity(max_degree + 1);
        let mut lookup = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            let s = x.simplices_of_degree(n);
            lookup.push(s.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect());
            simplices.push(s);
        }
        DegreeIndex { simplices, lookup }
    }

    pub fn position(&self, s: &NormalSimplex) -> usize {
        self.lookup[s.degree()][s]
    }
}

/// The named standard simplicial sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Simplex,
    Boundary,
    Horn,
}

/// `Δ[n]`, `∂Δ[n]` or `Λ^k[n]` with nondegenerate `m`-simplices the strictly
/// increasing `(m+1)`-subsets of `[n]` in lexicographic order.
pub fn standard(kind: StandardKind, n: usize, k: Option<usize>) -> Result<FinSimpSet> {
    match kind {
        StandardKind::Simplex => Ok(simplex_subcomplex(n, |_| true)),
        StandardKind::Boundary => Ok(simplex_subcomplex(n, |s| s.len() <= n)),
        StandardKind::Horn => {
            let k = k.ok_or_else(|| Error::Params("a horn needs k".into()))?;
            if n == 0 || k > n {
                return Err(Error::Params(format!("horn Λ^{k}[{n}] needs 0 <= k <= n and n > 0")));
            }
            Ok(simplex_subcomplex(n, |s| s.len() <= n && !(s.len() == n && !s.contains(&k))))
        }
    }
}

pub fn simplex(n: usize) -> FinSimpSet {
    simplex_subcomplex(n, |_| true)
}

pub fn boundary(n: usize) -> FinSimpSet {
    standard(StandardKind::Boundary, n, None).unwrap()
}

pub fn horn(n: usize, k: usize) -> Result<FinSimpSet> {
    standard(StandardKind::Horn, n, Some(k))
}

/// Simplicial subset of `Δ[n]` on the subsets accepted by `keep` (which must
/// be closed under taking nonempty subsets).
pub(crate) fn simplex_subcomplex(n: usize, keep: impl Fn(&[usize]) -> bool) -> FinSimpSet {
    let mut levels: Vec<Vec<Vec<usize>>> = Vec::new();
    for m in 0..=n {
        let level: Vec<Vec<usize>> = crate::delta::subsets_of(n + 1, m + 1).into_iter().filter(|s| keep(s)).collect();
        if level.is_empty() {
            break;
        }
        levels.push(level);
    }
    let index: Vec<HashMap<&[usize], usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();
    let mut faces = Vec::with_capacity(levels.len());
    for (m, level) in levels.iter().enumerate() {
        let rows = level
            .iter()
            .map(|s| {
                if m == 0 {
                    return Vec::new();
                }
                (0..=m)
                    .map(|j| {
                        let mut t = s.clone();
                        t.remove(j);
                        NormalSimplex::nondegenerate(SimplexId::new(m - 1, index[m - 1][t.as_slice()]))
                    })
                    .collect()
            })
            .collect();
        faces.push(rows);
    }
    let counts = levels.iter().map(|l| l.len()).collect();
    let mut x = FinSimpSet::new_unchecked(counts, faces).expect("standard simplex is well formed");
    for (m, level) in levels.iter().enumerate() {
        for (i, s) in level.iter().enumerate() {
            let sep = if n < 10 { "" } else { "," };
            let label: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            x.set_label(SimplexId::new(m, i), label.join(sep));
        }
    }
    x
}

/// A simplicial map given by the images of the nondegenerate source simplices.
#[derive(Clone)]
pub struct SimpMap {
    source: Arc<FinSimpSet>,
    target: Arc<FinSimpSet>,
    images: Vec<Vec<NormalSimplex>>,
}

impl fmt::Debug for SimpMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpMap({:?} -> {:?}: {:?})", self.source, self.target, self.images)
    }
}

impl PartialEq for SimpMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl SimpMap {
    /// Shape-checked but not validated against face compatibility.
    pub fn from_images(
        source: Arc<FinSimpSet>,
        target: Arc<FinSimpSet>,
        images: Vec<Vec<NormalSimplex>>,
    ) -> Result<Self> {
        if images.len() != source.counts.len() {
            return Err(Error::InvalidMap("image table does not match source dimensions".into()));
        }
        for (n, row) in images.iter().enumerate() {
            if row.len() != source.counts[n] {
                return Err(Error::InvalidMap(format!("dimension {n}: wrong number of images")));
            }
            for s in row {
                if s.degree() != n || !target.contains(s.base) || !s.degeneracy.is_surjective() {
                    return Err(Error::InvalidMap(format!("image {s:?} of a {n}-simplex is invalid")));
                }
            }
        }
        Ok(SimpMap { source, target, images })
    }

    /// Validated constructor.
    pub fn new(source: Arc<FinSimpSet>, target: Arc<FinSimpSet>, images: Vec<Vec<NormalSimplex>>) -> Result<Self> {
        let f = Self::from_images(source, target, images)?;
        if let Some(msg) = f.first_violation() {
            return Err(Error::InvalidMap(msg));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinSimpSet>,
        target: Arc<FinSimpSet>,
        images: Vec<Vec<NormalSimplex>>,
    ) -> Self {
        let f = SimpMap { source, target, images };
        debug_assert!(f.first_violation().is_none(), "{:?}", f.first_violation());
        f
    }

    pub fn identity(x: &Arc<FinSimpSet>) -> Self {
        let images = x
            .counts
            .iter()
            .enumerate()
            .map(|(n, &c)| (0..c).map(|i| NormalSimplex::nondegenerate(SimplexId::new(n, i))).collect())
            .collect();
        SimpMap { source: x.clone(), target: x.clone(), images }
    }

    /// The unique map from the empty simplicial set.
    pub fn from_empty(target: &Arc<FinSimpSet>) -> Self {
        SimpMap { source: Arc::new(FinSimpSet::empty()), target: target.clone(), images: Vec::new() }
    }

    /// The map to `Δ[0]`.
    pub fn to_point(source: &Arc<FinSimpSet>, point: &Arc<FinSimpSet>) -> Result<Self> {
        if point.counts() != [1] {
            return Err(Error::Params("target is not a point".into()));
        }
        let images = source
            .counts
            .iter()
            .enumerate()
            .map(|(n, &c)| {
                vec![NormalSimplex { base: SimplexId::new(0, 0), degeneracy: Operator::constant(n, 0, 0) }; c]
            })
            .collect();
        Ok(SimpMap { source: source.clone(), target: point.clone(), images })
    }

    pub fn source(&self) -> &Arc<FinSimpSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinSimpSet> {
        &self.target
    }

    pub fn images(&self) -> &[Vec<NormalSimplex>] {
        &self.images
    }

    pub fn image(&self, x: SimplexId) -> &NormalSimplex {
        &self.images[x.dim][x.index]
    }

    /// `f(s)` for an arbitrary simplex of the source.
    pub fn apply(&self, s: &NormalSimplex) -> NormalSimplex {
        self.images[s.base.dim][s.base.index].degenerate_by(&s.degeneracy)
    }

    fn first_violation(&self) -> Option<String> {
        for n in 1..self.source.counts.len() {
            for i in 0..self.source.counts[n] {
                let x = SimplexId::new(n, i);
                let fx = &self.images[n][i];
                for j in 0..=n {
                    let lhs = self.target.act_unchecked(fx, &Operator::face(j, n));
                    let rhs = self.apply(self.source.face(x, j));
                    if lhs != rhs {
                        return Some(format!("face {j} of {x:?}: f(x)δ = {lhs:?}, f(xδ) = {rhs:?}"));
                    }
                }
            }
        }
        None
    }

    /// Face compatibility everywhere.
    pub fn is_valid(&self) -> bool {
        self.first_violation().is_none()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SimpMap) -> Result<SimpMap> {
        if !(Arc::ptr_eq(&inner.target, &self.source) || *inner.target == *self.source) {
            return Err(Error::Composition("target of the inner map is not the source of the outer".into()));
        }
        let images = inner.images.iter().map(|row| row.iter().map(|s| self.apply(s)).collect()).collect();
        Ok(SimpMap { source: inner.source.clone(), target: self.target.clone(), images })
    }

    /// Nondegenerate simplices go to nondegenerate simplices, injectively.
    pub fn is_degreewise_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().flatten().all(|s| !s.is_degenerate() && seen.insert(s.base))
    }

    /// Every nondegenerate target simplex is the image of a nondegenerate one.
    pub fn is_degreewise_surjective(&self) -> bool {
        let mut hit: Vec<Vec<bool>> = self.target.counts.iter().map(|&c| vec![false; c]).collect();
        for s in self.images.iter().flatten() {
            if !s.is_degenerate() {
                hit[s.base.dim][s.base.index] = true;
            }
        }
        hit.iter().flatten().all(|&b| b)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.counts == self.target.counts && self.is_degreewise_injective()
    }

    /// For an isomorphism, the inverse map.
    pub fn inverse(&self) -> Result<SimpMap> {
        if !self.is_isomorphism() {
            return Err(Error::Precondition("map is not an isomorphism".into()));
        }
        let mut images: Vec<Vec<NormalSimplex>> =
            self.target.counts.iter().map(|&c| vec![NormalSimplex::nondegenerate(SimplexId::new(0, 0)); c]).collect();
        for x in self.source.ids() {
            let y = self.image(x).base;
            images[y.dim][y.index] = NormalSimplex::nondegenerate(x);
        }
        Ok(SimpMap { source: self.target.clone(), target: self.source.clone(), images })
    }

    /// Replace the source/target handles with equal sets.
    pub(crate) fn retarget(mut self, target: &Arc<FinSimpSet>) -> SimpMap {
        debug_assert!(*self.target == **target);
        self.target = target.clone();
        self
    }

    /// The same map with its source handle swapped for an equal set.
    pub fn with_source(mut self, source: &Arc<FinSimpSet>) -> Result<SimpMap> {
        if *self.source != **source {
            return Err(Error::Composition("replacement source differs".into()));
        }
        self.source = source.clone();
        Ok(self)
    }

    /// The same map with its target handle swapped for an equal set.
    pub fn with_target(mut self, target: &Arc<FinSimpSet>) -> Result<SimpMap> {
        if *self.target != **target {
            return Err(Error::Composition("replacement target differs".into()));
        }
        self.target = target.clone();
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(x: FinSimpSet) -> Arc<FinSimpSet> {
        Arc::new(x)
    }

    /// `Δ[n]/∂Δ[n]` written out by hand: one vertex, one `n`-cell, all faces
    /// degenerate on the vertex.
    fn sphere(n: usize) -> FinSimpSet {
        let mut counts = vec![0; n + 1];
        counts[0] = 1;
        counts[n] = 1;
        let mut faces: Vec<Vec<Vec<NormalSimplex>>> = (0..=n).map(|_| Vec::new()).collect();
        faces[0] = vec![Vec::new()];
        faces[n] = vec![(0..=n)
            .map(|_| NormalSimplex { base: SimplexId::new(0, 0), degeneracy: Operator::constant(n - 1, 0, 0) })
            .collect()];
        FinSimpSet::new(counts, faces).unwrap()
    }

    #[test]
    fn act_on_standard_simplex() {
        let d2 = simplex(2);
        let top = NormalSimplex::nondegenerate(SimplexId::new(2, 0));
        let e = d2.act(&top, &Operator::face(1, 2)).unwrap();
        assert!(!e.is_degenerate());
        assert_eq!(d2.label(e.base), Some("02"));
        assert_eq!(d2.act(&top, &Operator::identity(2)).unwrap(), top);
    }

    #[test]
    fn act_on_circle() {
        let s1 = sphere(1);
        let e = NormalSimplex::nondegenerate(SimplexId::new(1, 0));
        let a = Operator::new(1, vec![1, 1]).unwrap();
        let got = s1.act(&e, &a).unwrap();
        assert_eq!(got.base, SimplexId::new(0, 0));
        assert_eq!(got.degeneracy, Operator::degeneracy(0, 1));
    }

    #[test]
    fn act_dimension_mismatch() {
        let d2 = simplex(2);
        let top = NormalSimplex::nondegenerate(SimplexId::new(2, 0));
        assert!(matches!(d2.act(&top, &Operator::face(0, 1)), Err(Error::Dimension(_))));
    }

    #[test]
    fn embeddedness_examples() {
        assert!(simplex(3).is_embedded(SimplexId::new(3, 0)).unwrap());
        assert!(!sphere(1).is_embedded(SimplexId::new(1, 0)).unwrap());
        assert!(!sphere(2).is_embedded(SimplexId::new(2, 0)).unwrap());
        assert!(sphere(2).is_embedded(SimplexId::new(5, 0)).is_err());
    }

    #[test]
    fn nonsingularity_examples() {
        for n in 0..=3 {
            assert!(simplex(n).is_nonsingular());
        }
        for n in 1..=3 {
            assert!(boundary(n).is_nonsingular());
            for k in 0..=n {
                assert!(horn(n, k).unwrap().is_nonsingular());
            }
        }
        assert!(!sphere(2).is_nonsingular());
    }

    #[test]
    fn standard_f_vectors() {
        assert_eq!(simplex(2).f_vector(), vec![3, 3, 1]);
        assert_eq!(boundary(2).f_vector(), vec![3, 3]);
        let h = horn(2, 0).unwrap();
        assert_eq!(h.f_vector(), vec![3, 2]);
        // Λ⁰[2] drops the 12 edge
        let edges: Vec<_> = h.ids_of_dim(1).map(|e| h.label(e).unwrap().to_string()).collect();
        assert_eq!(edges, vec!["01", "02"]);
        assert!(standard(StandardKind::Horn, 2, Some(3)).is_err());
        assert!(standard(StandardKind::Horn, 0, Some(0)).is_err());
        assert!(standard(StandardKind::Horn, 2, None).is_err());
        assert_eq!(simplex(3).euler_characteristic(), 1);
        assert_eq!(boundary(3).euler_characteristic(), 2);
    }

    #[test]
    fn malformed_identities_rejected() {
        // a 2-simplex whose faces do not agree on vertices
        let counts = vec![3, 3, 1];
        let v = |i| NormalSimplex::nondegenerate(SimplexId::new(0, i));
        let e = |i| NormalSimplex::nondegenerate(SimplexId::new(1, i));
        let faces = vec![
            vec![vec![], vec![], vec![]],
            vec![vec![v(1), v(0)], vec![v(2), v(0)], vec![v(2), v(1)]],
            vec![vec![e(2), e(2), e(0)]],
        ];
        assert!(matches!(FinSimpSet::new(counts, faces), Err(Error::Malformed(_))));
    }

    #[test]
    fn validate_map_examples() {
        let d1 = arc(simplex(1));
        let d2 = arc(simplex(2));
        assert!(SimpMap::identity(&d2).is_valid());
        // edge to the degenerate vertex 0
        let images = vec![
            vec![NormalSimplex::nondegenerate(SimplexId::new(0, 0)); 2],
            vec![NormalSimplex { base: SimplexId::new(0, 0), degeneracy: Operator::degeneracy(0, 1) }],
        ];
        assert!(SimpMap::new(d1.clone(), d1.clone(), images).is_ok());
        let clash = vec![
            vec![
                NormalSimplex::nondegenerate(SimplexId::new(0, 1)),
                NormalSimplex::nondegenerate(SimplexId::new(0, 1)),
            ],
            vec![NormalSimplex::nondegenerate(SimplexId::new(1, 0))],
        ];
        let f = SimpMap::from_images(d1.clone(), d1.clone(), clash).unwrap();
        assert!(!f.is_valid());
    }

    #[test]
    fn injectivity_examples() {
        let d2 = arc(simplex(2));
        let b2 = arc(boundary(2));
        let incl = SimpMap::new(
            b2.clone(),
            d2.clone(),
            b2.ids().fold(vec![vec![], vec![]], |mut acc, x| {
                acc[x.dim].push(NormalSimplex::nondegenerate(x));
                acc
            }),
        )
        .unwrap();
        assert!(incl.is_degreewise_injective());
        assert!(!incl.is_degreewise_surjective());
        let pt = arc(simplex(0));
        let c = SimpMap::to_point(&arc(simplex(1)), &pt).unwrap();
        assert!(c.is_valid());
        assert!(!c.is_degreewise_injective());
        assert!(c.is_degreewise_surjective());
    }

    #[test]
    fn compose_identities() {
        let d2 = arc(simplex(2));
        let id = SimpMap::identity(&d2);
        let pt = arc(simplex(0));
        let c = SimpMap::to_point(&d2, &pt).unwrap();
        assert_eq!(c.compose(&id).unwrap(), c);
        assert_eq!(SimpMap::identity(&pt).compose(&c).unwrap(), c);
        assert!(id.compose(&c).is_err());
    }
}
