//! Simplicial subsets, coproducts, pushouts, collapses, products with `Δ[1]`,
//! and the eden/abyss vocabulary.
//!
//! A full simplicial subset `A ⊆ X` is an *eden* when no nondegenerate edge
//! enters it: any 1-simplex whose last vertex lies in `A` lies in `A`. It is
//! an *abyss* when no edge leaves it, i.e. the same with the zeroth vertex.
//! Equivalently, an eden is the fibre over `0` of a (unique) map `X -> Δ[1]`,
//! an abyss the fibre over `1`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::delta::Operator;
use crate::error::{Error, Result};
use crate::quotient::quotient;
use crate::sset::{simplex, FinSimpSet, NormalSimplex, SimpMap, SimplexId, StandardKind};

/// A simplicial subset, given by the nondegenerate simplices it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    ambient: Arc<FinSimpSet>,
    members: BTreeSet<SimplexId>,
}

impl Subcomplex {
    pub fn new(ambient: &Arc<FinSimpSet>, members: impl IntoIterator<Item = SimplexId>) -> Result<Self> {
        let members: BTreeSet<SimplexId> = members.into_iter().collect();
        for &x in &members {
            ambient.check_id(x)?;
            if x.dim > 0 {
                for j in 0..=x.dim {
                    let b = ambient.face(x, j).base;
                    if !members.contains(&b) {
                        return Err(Error::Malformed(format!("face {b:?} of {x:?} is missing")));
                    }
                }
            }
        }
        Ok(Subcomplex { ambient: ambient.clone(), members })
    }

    /// The smallest simplicial subset containing `generators`.
    pub fn generated(ambient: &Arc<FinSimpSet>, generators: impl IntoIterator<Item = SimplexId>) -> Result<Self> {
        let mut members = BTreeSet::new();
        let mut stack: Vec<SimplexId> = generators.into_iter().collect();
        while let Some(x) = stack.pop() {
            ambient.check_id(x)?;
            if members.insert(x) && x.dim > 0 {
                stack.extend((0..=x.dim).map(|j| ambient.face(x, j).base));
            }
        }
        Ok(Subcomplex { ambient: ambient.clone(), members })
    }

    pub fn empty(ambient: &Arc<FinSimpSet>) -> Self {
        Subcomplex { ambient: ambient.clone(), members: BTreeSet::new() }
    }

    pub fn whole(ambient: &Arc<FinSimpSet>) -> Self {
        Subcomplex { ambient: ambient.clone(), members: ambient.ids().collect() }
    }

    /// The full simplicial subset on a set of vertices.
    pub fn full_on_vertices(ambient: &Arc<FinSimpSet>, vertices: &[usize]) -> Self {
        let mut inside = vec![false; ambient.count(0)];
        for &v in vertices {
            inside[v] = true;
        }
        let members = ambient.ids().filter(|&x| ambient.vertices(x).iter().all(|&v| inside[v])).collect();
        Subcomplex { ambient: ambient.clone(), members }
    }

    /// The image of a map, as a simplicial subset of its target.
    pub fn image(f: &SimpMap) -> Self {
        let members = f.source().ids().map(|x| f.image(x).base).collect();
        Subcomplex { ambient: f.target().clone(), members }
    }

    pub fn ambient(&self) -> &Arc<FinSimpSet> {
        &self.ambient
    }

    pub fn members(&self) -> &BTreeSet<SimplexId> {
        &self.members
    }

    pub fn contains(&self, x: SimplexId) -> bool {
        self.members.contains(&x)
    }

    /// Whether an arbitrary simplex of the ambient set lies in the subset.
    pub fn contains_simplex(&self, s: &NormalSimplex) -> bool {
        self.members.contains(&s.base)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.members.iter().filter(|x| x.dim == 0).map(|x| x.index).collect()
    }

    pub fn vertex_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.ambient.count(0)];
        for v in self.vertices() {
            m[v] = true;
        }
        m
    }

    /// A map into the ambient set whose image lies in the subset, viewed as a
    /// map into [`Subcomplex::inclusion`]'s set `sub`.
    pub fn corestrict(&self, f: &SimpMap, sub: &Arc<FinSimpSet>) -> Result<SimpMap> {
        let mut renum: HashMap<SimplexId, SimplexId> = HashMap::new();
        let mut counts: Vec<usize> = Vec::new();
        for &id in &self.members {
            if counts.len() <= id.dim {
                counts.resize(id.dim + 1, 0);
            }
            renum.insert(id, SimplexId::new(id.dim, counts[id.dim]));
            counts[id.dim] += 1;
        }
        if counts != sub.counts() {
            return Err(Error::Composition("set does not match the subset".into()));
        }
        let images = f
            .images()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| match renum.get(&s.base) {
                        Some(&b) => Ok(NormalSimplex { base: b, degeneracy: s.degeneracy.clone() }),
                        None => Err(Error::Precondition(format!("{:?} is not in the subset", s.base))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimpMap::new(f.source().clone(), sub.clone(), images)
    }

    /// The subset as a simplicial set in its own right, with the inclusion.
    /// Simplices keep the relative order they have in the ambient set.
    pub fn inclusion(&self) -> (Arc<FinSimpSet>, SimpMap) {
        let x = &self.ambient;
        let mut renum: HashMap<SimplexId, SimplexId> = HashMap::new();
        let mut counts: Vec<usize> = Vec::new();
        for &id in &self.members {
            if counts.len() <= id.dim {
                counts.resize(id.dim + 1, 0);
            }
            renum.insert(id, SimplexId::new(id.dim, counts[id.dim]));
            counts[id.dim] += 1;
        }
        let mut faces: Vec<Vec<Vec<NormalSimplex>>> = counts.iter().map(|&c| Vec::with_capacity(c)).collect();
        let mut images: Vec<Vec<NormalSimplex>> = counts.iter().map(|&c| Vec::with_capacity(c)).collect();
        for &id in &self.members {
            let row = if id.dim == 0 {
                Vec::new()
            } else {
                (0..=id.dim)
                    .map(|j| {
                        let f = x.face(id, j);
                        NormalSimplex { base: renum[&f.base], degeneracy: f.degeneracy.clone() }
                    })
                    .collect()
            };
            faces[id.dim].push(row);
            images[id.dim].push(NormalSimplex::nondegenerate(id));
        }
        let mut a = FinSimpSet::new_unchecked(counts, faces).expect("subset of a valid set");
        for &id in &self.members {
            if let Some(l) = x.label(id) {
                a.set_label(renum[&id], l);
            }
        }
        let a = Arc::new(a);
        let inc = SimpMap::new_unchecked(a.clone(), x.clone(), images);
        (a, inc)
    }
}

/// Disjoint union with its injections. Simplices are ordered by dimension,
/// then by summand.
pub fn coproduct(xs: &[Arc<FinSimpSet>]) -> (Arc<FinSimpSet>, Vec<SimpMap>) {
    let top = xs.iter().filter_map(|x| x.dim()).max();
    let Some(top) = top else {
        let e = Arc::new(FinSimpSet::empty());
        let inj = xs.iter().map(|x| SimpMap::new_unchecked(x.clone(), e.clone(), Vec::new())).collect();
        return (e, inj);
    };
    // offsets[k][n]: where summand k starts in dimension n
    let mut offsets = vec![vec![0usize; top + 1]; xs.len()];
    let mut counts = vec![0usize; top + 1];
    for n in 0..=top {
        for (k, x) in xs.iter().enumerate() {
            offsets[k][n] = counts[n];
            counts[n] += x.count(n);
        }
    }
    let shift = |k: usize, s: &NormalSimplex| NormalSimplex {
        base: SimplexId::new(s.base.dim, offsets[k][s.base.dim] + s.base.index),
        degeneracy: s.degeneracy.clone(),
    };
    let mut faces: Vec<Vec<Vec<NormalSimplex>>> = vec![Vec::new(); top + 1];
    for n in 0..=top {
        for (k, x) in xs.iter().enumerate() {
            for id in x.ids_of_dim(n) {
                let row = if n == 0 { Vec::new() } else { (0..=n).map(|j| shift(k, x.face(id, j))).collect() };
                faces[n].push(row);
            }
        }
    }
    let mut u = FinSimpSet::new_unchecked(counts, faces).expect("coproduct of valid sets");
    for (k, x) in xs.iter().enumerate() {
        for (&id, l) in x.labels() {
            u.set_label(SimplexId::new(id.dim, offsets[k][id.dim] + id.index), l.clone());
        }
    }
    let u = Arc::new(u);
    let inj = xs
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let images = x
                .counts()
                .iter()
                .enumerate()
                .map(|(n, &c)| (0..c).map(|i| shift(k, &NormalSimplex::nondegenerate(SimplexId::new(n, i)))).collect())
                .collect();
            SimpMap::new_unchecked(x.clone(), u.clone(), images)
        })
        .collect();
    (u, inj)
}

/// A pushout square `B -> P <- C` with the quotient map `B ⊔ C -> P` and
/// the two coproduct injections it is defined on.
#[derive(Clone, Debug)]
pub struct PushoutResult {
    pub apex: Arc<FinSimpSet>,
    pub left_leg: SimpMap,
    pub right_leg: SimpMap,
    pub quotient: SimpMap,
    pub injections: Vec<SimpMap>,
}

/// Pushout of `B <-f- A -g-> C`.
pub fn pushout(f: &SimpMap, g: &SimpMap) -> Result<PushoutResult> {
    if !(Arc::ptr_eq(f.source(), g.source()) || f.source() == g.source()) {
        return Err(Error::Composition("pushout legs have different sources".into()));
    }
    let (u, inj) = coproduct(&[f.target().clone(), g.target().clone()]);
    let relations: Vec<(NormalSimplex, NormalSimplex)> =
        f.source().ids().map(|a| (inj[0].apply(f.image(a)), inj[1].apply(g.image(a)))).collect();
    let q = quotient(&u, &relations)?;
    let left_leg = q.map.compose(&inj[0])?;
    let right_leg = q.map.compose(&inj[1])?;
    Ok(PushoutResult { apex: q.set, left_leg, right_leg, quotient: q.map, injections: inj })
}

/// The map out of a coproduct that restricts to `maps[k]` on summand `k`.
pub fn copair(injections: &[SimpMap], maps: &[SimpMap]) -> Result<SimpMap> {
    if injections.len() != maps.len() || maps.is_empty() {
        return Err(Error::Params("need one map per summand".into()));
    }
    let u = injections[0].target();
    let target = maps[0].target();
    let mut images: Vec<Vec<Option<NormalSimplex>>> = u.counts().iter().map(|&c| vec![None; c]).collect();
    for (inj, f) in injections.iter().zip(maps) {
        if !(Arc::ptr_eq(inj.source(), f.source()) || inj.source() == f.source())
            || !(Arc::ptr_eq(f.target(), target) || f.target() == target)
        {
            return Err(Error::Composition("copairing maps do not fit the coproduct".into()));
        }
        for x in inj.source().ids() {
            let b = inj.image(x).base;
            images[b.dim][b.index] = Some(f.image(x).clone());
        }
    }
    let images = images
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Params("injections do not cover the coproduct".into()))?;
    SimpMap::new(u.clone(), target.clone(), images)
}

/// `X/A`: the pushout of `X <- A -> Δ[0]`; the right leg picks the new point.
pub fn collapse(a: &Subcomplex) -> Result<PushoutResult> {
    if a.is_empty() {
        return Err(Error::Precondition("collapse of an empty simplicial subset".into()));
    }
    let (sub, inc) = a.inclusion();
    let pt = Arc::new(simplex(0));
    pushout(&inc, &SimpMap::to_point(&sub, &pt)?)
}

/// Every nondegenerate simplex whose vertices lie in `A` lies in `A`.
pub fn is_full(a: &Subcomplex) -> bool {
    let x = a.ambient();
    let inside = a.vertex_mask();
    x.ids().all(|s| a.contains(s) || !x.vertices(s).iter().all(|&v| inside[v]))
}

fn edge_closed(a: &Subcomplex, end: usize) -> bool {
    let x = a.ambient();
    let inside = a.vertex_mask();
    x.ids_of_dim(1).all(|e| a.contains(e) || !inside[x.vertices(e)[end]])
}

pub fn is_eden(a: &Subcomplex) -> bool {
    is_full(a) && edge_closed(a, 1)
}

pub fn is_abyss(a: &Subcomplex) -> bool {
    is_full(a) && edge_closed(a, 0)
}

/// The elementary form: every simplex whose last (resp. zeroth, for an
/// abyss) vertex is in `A` is in `A`. Checking nondegenerate simplices
/// suffices, since `x·σ` and `x` have the same first and last vertex.
pub fn is_eden_by_last_vertex(a: &Subcomplex) -> bool {
    let x = a.ambient();
    let inside = a.vertex_mask();
    x.ids().all(|s| a.contains(s) || !inside[*x.vertices(s).last().unwrap()])
}

pub fn is_abyss_by_first_vertex(a: &Subcomplex) -> bool {
    let x = a.ambient();
    let inside = a.vertex_mask();
    x.ids().all(|s| a.contains(s) || !inside[x.vertices(s)[0]])
}

/// The simplex of `Δ[n]` (with the standard numbering) named by an operator
/// `[m] -> [n]`.
pub fn standard_simplex_of(op: &Operator) -> NormalSimplex {
    let (epi, mono) = op.epi_mono_factor();
    let n = op.target_dim();
    let k = mono.source_dim();
    let index = crate::delta::subsets_of(n + 1, k + 1)
        .iter()
        .position(|s| s.as_slice() == mono.images())
        .expect("face of the standard simplex");
    NormalSimplex { base: SimplexId::new(k, index), degeneracy: epi }
}

/// The characteristic map `χ : X -> Δ[1]` of an eden (`0` on `A`, `1` off it).
pub fn eden_characteristic(a: &Subcomplex) -> Result<SimpMap> {
    if !is_eden(a) {
        return Err(Error::Precondition("not an eden".into()));
    }
    characteristic(a, false)
}

/// The characteristic map of an abyss (`1` on `A`, `0` off it).
pub fn abyss_characteristic(a: &Subcomplex) -> Result<SimpMap> {
    if !is_abyss(a) {
        return Err(Error::Precondition("not an abyss".into()));
    }
    characteristic(a, true)
}

fn characteristic(a: &Subcomplex, abyss: bool) -> Result<SimpMap> {
    let x = a.ambient();
    let inside = a.vertex_mask();
    let d1 = Arc::new(simplex(1));
    let mut images: Vec<Vec<NormalSimplex>> = Vec::new();
    for n in 0..x.counts().len() {
        let mut row = Vec::with_capacity(x.count(n));
        for s in x.ids_of_dim(n) {
            let labels: Vec<usize> = x.vertices(s).iter().map(|&v| if inside[v] != abyss { 0 } else { 1 }).collect();
            let op = Operator::new(1, labels)
                .map_err(|_| Error::Internal(format!("vertex labels of {s:?} are not monotone")))?;
            row.push(standard_simplex_of(&op));
        }
        images.push(row);
    }
    SimpMap::new(x.clone(), d1, images).map_err(|e| Error::Internal(e.to_string()))
}

/// The simplicial subset of simplices sent to the vertex `end` of `Δ[1]`.
pub fn end_fiber(chi: &SimpMap, end: usize) -> Result<Subcomplex> {
    if chi.target().counts() != [2, 1] || end > 1 {
        return Err(Error::Params("expected a map to Δ[1] and an end 0 or 1".into()));
    }
    let x = chi.source();
    let members = x.ids().filter(|&s| {
        let im = chi.image(s);
        im.base == SimplexId::new(0, end)
    });
    Subcomplex::new(x, members)
}

/// The full simplicial subset on the vertices not in `A`.
/// `Δ[n]` together with `Δ[n]`, `∂Δ[n]` or `Λ^k[n]` as a simplicial subset of it.
pub fn standard_pair(kind: StandardKind, n: usize, k: Option<usize>) -> Result<(Arc<FinSimpSet>, Subcomplex)> {
    let d = Arc::new(simplex(n));
    let keep = |v: &[usize]| -> Result<bool> {
        Ok(match kind {
            StandardKind::Simplex => true,
            StandardKind::Boundary => v.len() <= n,
            StandardKind::Horn => {
                let k = k.ok_or_else(|| Error::Params("a horn needs k".into()))?;
                if n == 0 || k > n {
                    return Err(Error::Params(format!("horn Λ^{k}[{n}] needs 0 <= k <= n and n > 0")));
                }
                v.len() < n || (v.len() == n && v.contains(&k))
            }
        })
    };
    let mut members = Vec::new();
    for id in d.ids() {
        if keep(d.vertices(id))? {
            members.push(id);
        }
    }
    let a = Subcomplex::new(&d, members)?;
    Ok((d, a))
}

pub fn complement_full(a: &Subcomplex) -> Subcomplex {
    let inside = a.vertex_mask();
    let outside: Vec<usize> = (0..inside.len()).filter(|&v| !inside[v]).collect();
    Subcomplex::full_on_vertices(a.ambient(), &outside)
}

/// Whether the commuting square
/// ```text
/// A --top--> B
/// |          |
/// left     right
/// v          v
/// C --bot--> D
/// ```
/// is cartesian, checked as a bijection `A_n -> B_n ×_{D_n} C_n` in every
/// degree up to `max dim + 2`.
pub fn is_cartesian(top: &SimpMap, left: &SimpMap, right: &SimpMap, bottom: &SimpMap) -> Result<bool> {
    let commutes = right.compose(top)? == bottom.compose(left)?;
    if !commutes {
        return Ok(false);
    }
    let bound = [top.source(), top.target(), left.target(), right.target()]
        .iter()
        .filter_map(|x| x.dim())
        .max()
        .map_or(0, |d| d + 2);
    for n in 0..=bound {
        let a_n = top.source().simplices_of_degree(n);
        let mut seen = std::collections::HashSet::new();
        for s in &a_n {
            if !seen.insert((top.apply(s), left.apply(s))) {
                return Ok(false);
            }
        }
        // count the fibre product
        let mut by_d: HashMap<NormalSimplex, usize> = HashMap::new();
        for s in bottom.source().simplices_of_degree(n) {
            *by_d.entry(bottom.apply(&s)).or_default() += 1;
        }
        let fibre: usize =
            top.target().simplices_of_degree(n).iter().map(|s| by_d.get(&right.apply(s)).copied().unwrap_or(0)).sum();
        if fibre != a_n.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X × Δ[1]` with projections, end inclusions, and the generator data.
#[derive(Clone, Debug)]
pub struct IntervalProduct {
    pub factor: Arc<FinSimpSet>,
    pub set: Arc<FinSimpSet>,
    /// For every nondegenerate simplex of the product: `(x·σ, t)`.
    pub pairs: Vec<Vec<(NormalSimplex, Operator)>>,
    lookup: HashMap<(NormalSimplex, Operator), SimplexId>,
    pub pr1: SimpMap,
    pub pr2: SimpMap,
    pub i0: SimpMap,
    pub i1: SimpMap,
}

impl IntervalProduct {
    /// The product simplex `(s, t)` in normal form.
    pub fn pair(&self, s: &NormalSimplex, t: &Operator) -> NormalSimplex {
        let (base, degeneracy) = normalize_pair(s, t);
        NormalSimplex { base: self.lookup[&base], degeneracy }
    }

    /// `f × 1 : X × Δ[1] -> Y × Δ[1]`.
    pub fn map_product(&self, f: &SimpMap, target: &IntervalProduct) -> Result<SimpMap> {
        if !(Arc::ptr_eq(f.source(), &self.factor) || **f.source() == *self.factor)
            || !(Arc::ptr_eq(f.target(), &target.factor) || **f.target() == *target.factor)
        {
            return Err(Error::Composition("map does not fit the products".into()));
        }
        let images =
            self.pairs.iter().map(|row| row.iter().map(|(s, t)| target.pair(&f.apply(s), t)).collect()).collect();
        Ok(SimpMap::new_unchecked(self.set.clone(), target.set.clone(), images))
    }
}

/// `(x·σ, t)` as `(x·σ', t')·ε` with `(σ', t')` jointly injective.
fn normalize_pair(s: &NormalSimplex, t: &Operator) -> ((NormalSimplex, Operator), Operator) {
    let sig = s.degeneracy.images();
    let tt = t.images();
    let mut keep_s = vec![sig[0]];
    let mut keep_t = vec![tt[0]];
    let mut eps = vec![0usize];
    for i in 1..sig.len() {
        if sig[i] != sig[i - 1] || tt[i] != tt[i - 1] {
            keep_s.push(sig[i]);
            keep_t.push(tt[i]);
        }
        eps.push(keep_s.len() - 1);
    }
    let m = keep_s.len() - 1;
    let base = (
        NormalSimplex { base: s.base, degeneracy: Operator::from_images_unchecked(s.base.dim, keep_s) },
        Operator::from_images_unchecked(1, keep_t),
    );
    (base, Operator::from_images_unchecked(m, eps))
}

pub fn product_with_interval(x: &Arc<FinSimpSet>) -> IntervalProduct {
    let d1 = Arc::new(simplex(1));
    let top = x.dim().map_or(0, |d| d + 1);
    let mut pairs: Vec<Vec<(NormalSimplex, Operator)>> = Vec::new();
    if !x.is_empty() {
        for n in 0..=top {
            let mut level = Vec::new();
            for s in x.simplices_of_degree(n) {
                for t in Operator::all(n, 1) {
                    let (_, eps) = normalize_pair(&s, &t);
                    if eps.is_identity() {
                        level.push((s.clone(), t));
                    }
                }
            }
            level.sort_by(|a, b| {
                (a.0.base, a.0.degeneracy.images(), a.1.images()).cmp(&(
                    b.0.base,
                    b.0.degeneracy.images(),
                    b.1.images(),
                ))
            });
            pairs.push(level);
        }
        while pairs.last().is_some_and(|l| l.is_empty()) {
            pairs.pop();
        }
    }
    let mut lookup = HashMap::new();
    for (n, level) in pairs.iter().enumerate() {
        for (i, p) in level.iter().enumerate() {
            lookup.insert(p.clone(), SimplexId::new(n, i));
        }
    }
    let find = |s: &NormalSimplex, t: &Operator| {
        let (base, eps) = normalize_pair(s, t);
        NormalSimplex { base: lookup[&base], degeneracy: eps }
    };
    let faces: Vec<Vec<Vec<NormalSimplex>>> = pairs
        .iter()
        .enumerate()
        .map(|(n, level)| {
            level
                .iter()
                .map(|(s, t)| {
                    if n == 0 {
                        return Vec::new();
                    }
                    (0..=n)
                        .map(|j| {
                            let d = Operator::face(j, n);
                            find(&x.act_unchecked(s, &d), &t.compose_unchecked(&d))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let counts = pairs.iter().map(|l| l.len()).collect();
    let mut set = FinSimpSet::new_unchecked(counts, faces).expect("product is well formed");
    for (n, level) in pairs.iter().enumerate() {
        for (i, (s, t)) in level.iter().enumerate() {
            if n == 0 {
                let l = x.label(s.base).map(str::to_string).unwrap_or_else(|| format!("{:?}", s.base));
                set.set_label(SimplexId::new(0, i), format!("({l},{})", t.images()[0]));
            }
        }
    }
    let set = Arc::new(set);
    let pr1 = SimpMap::new_unchecked(
        set.clone(),
        x.clone(),
        pairs.iter().map(|l| l.iter().map(|(s, _)| s.clone()).collect()).collect(),
    );
    let pr2 = SimpMap::new_unchecked(
        set.clone(),
        d1.clone(),
        pairs.iter().map(|l| l.iter().map(|(_, t)| standard_simplex_of(t)).collect()).collect(),
    );
    let end = |v: usize| {
        let images = x
            .counts()
            .iter()
            .enumerate()
            .map(|(n, &c)| {
                (0..c)
                    .map(|i| find(&NormalSimplex::nondegenerate(SimplexId::new(n, i)), &Operator::constant(n, 1, v)))
                    .collect()
            })
            .collect();
        SimpMap::new_unchecked(x.clone(), set.clone(), images)
    };
    let (i0, i1) = (end(0), end(1));
    IntervalProduct { factor: x.clone(), set, pairs, lookup, pr1, pr2, i0, i1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use crate::poset::{nerve, FinPoset};
    use crate::sset::{boundary, horn};

    fn sub(x: &Arc<FinSimpSet>, ids: &[(usize, usize)]) -> Subcomplex {
        Subcomplex::generated(x, ids.iter().map(|&(d, i)| SimplexId::new(d, i))).unwrap()
    }

    fn inclusion_of_boundary(n: usize) -> (Arc<FinSimpSet>, SimpMap) {
        let d = Arc::new(simplex(n));
        let b = Subcomplex::new(&d, d.ids().filter(|x| x.dim < n)).unwrap();
        b.inclusion()
    }

    #[test]
    fn coproduct_examples() {
        let p = Arc::new(simplex(0));
        assert_eq!(coproduct(&[p.clone(), p.clone()]).0.counts(), &[2]);
        assert!(coproduct(&[]).0.is_empty());
        let d1 = Arc::new(simplex(1));
        let (u, inj) = coproduct(&[d1.clone(), d1.clone()]);
        assert_eq!(u.counts(), &[4, 2]);
        assert!(inj.iter().all(|i| i.is_valid() && i.is_degreewise_injective()));
    }

    #[test]
    fn pushout_examples() {
        let pt = Arc::new(simplex(0));
        let (b1, inc1) = inclusion_of_boundary(1);
        let po = pushout(&inc1, &SimpMap::to_point(&b1, &pt).unwrap()).unwrap();
        assert_eq!(po.apex.counts(), &[1, 1]);
        let d1 = Arc::new(simplex(1));
        let po = pushout(&SimpMap::identity(&d1), &SimpMap::to_point(&d1, &pt).unwrap()).unwrap();
        assert_eq!(po.apex.counts(), &[1]);
        assert!(po.left_leg.image(SimplexId::new(1, 0)).is_degenerate());
        let (b2, inc2) = inclusion_of_boundary(2);
        let po = pushout(&inc2, &SimpMap::to_point(&b2, &pt).unwrap()).unwrap();
        assert_eq!(po.apex.counts(), &[1, 0, 1]);
        assert_eq!(
            po.left_leg.compose(&inc2).unwrap(),
            po.right_leg.compose(&SimpMap::to_point(&b2, &pt).unwrap()).unwrap()
        );
    }

    #[test]
    fn collapse_examples() {
        let d2 = Arc::new(simplex(2));
        let edge = sub(&d2, &[(1, 0)]);
        let c = collapse(&edge).unwrap();
        assert_eq!(c.apex.counts(), &[2, 2, 1]);
        assert!(!c.apex.is_embedded(SimplexId::new(2, 0)).unwrap());
        assert!(collapse(&Subcomplex::empty(&d2)).is_err());
        let b = Subcomplex::new(&d2, d2.ids().filter(|x| x.dim < 2)).unwrap();
        assert_eq!(collapse(&b).unwrap().apex.counts(), &[1, 0, 1]);
    }

    #[test]
    fn fullness_and_edens() {
        let d1 = Arc::new(simplex(1));
        let v0 = sub(&d1, &[(0, 0)]);
        let v1 = sub(&d1, &[(0, 1)]);
        assert!(is_eden(&v0) && !is_abyss(&v0));
        assert!(!is_eden(&v1) && is_abyss(&v1));
        let d2 = Arc::new(simplex(2));
        assert!(is_eden(&sub(&d2, &[(1, 0)])));
        let b = Subcomplex::new(&d2, d2.ids().filter(|x| x.dim < 2)).unwrap();
        assert!(!is_full(&b));
        let h =
            Subcomplex::new(&d2, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)].map(|(d, i)| SimplexId::new(d, i))).unwrap();
        assert!(!is_full(&h));
    }

    #[test]
    fn characteristic_maps() {
        let d1 = Arc::new(simplex(1));
        let chi = eden_characteristic(&sub(&d1, &[(0, 0)])).unwrap();
        assert_eq!(chi.images(), SimpMap::identity(&d1).images());
        let whole = Subcomplex::whole(&d1);
        let chi = eden_characteristic(&whole).unwrap();
        assert!(chi.images().iter().flatten().all(|s| s.base == SimplexId::new(0, 0)));
        let d2 = Arc::new(simplex(2));
        let edge = sub(&d2, &[(1, 0)]);
        let chi = eden_characteristic(&edge).unwrap();
        assert_eq!(chi.image(SimplexId::new(2, 0)).degeneracy.images(), &[0, 0, 1]);
        assert_eq!(end_fiber(&chi, 0).unwrap(), edge);
        assert!(eden_characteristic(&sub(&d1, &[(0, 1)])).is_err());
        let one = SimpMap::new(
            d1.clone(),
            Arc::new(simplex(1)),
            vec![
                vec![NormalSimplex::nondegenerate(SimplexId::new(0, 1)); 2],
                vec![NormalSimplex { base: SimplexId::new(0, 1), degeneracy: Operator::constant(1, 0, 0) }],
            ],
        )
        .unwrap();
        assert!(end_fiber(&one, 0).unwrap().is_empty());
        assert_eq!(end_fiber(&SimpMap::identity(&d1), 0).unwrap(), sub(&d1, &[(0, 0)]));
    }

    #[test]
    fn complements() {
        let d1 = Arc::new(simplex(1));
        assert_eq!(complement_full(&sub(&d1, &[(0, 0)])), sub(&d1, &[(0, 1)]));
        let d2 = Arc::new(simplex(2));
        assert_eq!(complement_full(&sub(&d2, &[(1, 0)])), sub(&d2, &[(0, 2)]));
    }

    #[test]
    fn interval_products() {
        let p = product_with_interval(&Arc::new(simplex(0)));
        assert!(are_isomorphic(&p.set, &Arc::new(simplex(1))).is_some());
        let d1 = Arc::new(simplex(1));
        let p = product_with_interval(&d1);
        assert_eq!(p.set.counts(), &[4, 5, 2]);
        for m in [&p.pr1, &p.pr2, &p.i0, &p.i1] {
            assert!(m.is_valid());
        }
        assert_eq!(p.pr1.compose(&p.i0).unwrap(), SimpMap::identity(&d1));
        assert_eq!(p.pr1.compose(&p.i1).unwrap(), SimpMap::identity(&d1));
        let q = FinPoset::from_relation(3, &[(0, 1), (0, 2)]).unwrap();
        let lhs = product_with_interval(&Arc::new(nerve(&q)));
        let rhs = Arc::new(nerve(&q.product(&FinPoset::chain(1))));
        assert!(are_isomorphic(&lhs.set, &rhs).is_some());
        let h = Arc::new(horn(2, 1).unwrap());
        let b = Arc::new(boundary(2));
        assert!(product_with_interval(&h).set.counts().len() == 3);
        assert!(product_with_interval(&b).pr2.is_valid());
    }

    #[test]
    fn cartesian_fibres() {
        let d2 = Arc::new(simplex(2));
        let edge = sub(&d2, &[(1, 0)]);
        let chi = eden_characteristic(&edge).unwrap();
        let (a, inc) = edge.inclusion();
        let pt = Arc::new(simplex(0));
        let e0 = SimpMap::new(
            pt.clone(),
            chi.target().clone(),
            vec![vec![NormalSimplex::nondegenerate(SimplexId::new(0, 0))]],
        )
        .unwrap();
        let to_pt = SimpMap::to_point(&a, &pt).unwrap();
        assert!(is_cartesian(&inc, &to_pt, &chi, &e0).unwrap());
        let (v, incv) = sub(&d2, &[(0, 0)]).inclusion();
        let to_pt = SimpMap::to_point(&v, &pt).unwrap();
        assert!(!is_cartesian(&incv, &to_pt, &chi, &e0).unwrap());
    }
}
