//! Seeded random inputs.
//!
//! Sets are grown by attaching simplices along random boundary maps
//! `∂Δ[n] -> X` into what has been built so far, so singular sets (loops,
//! pinched simplices, collapsed faces) come out as readily as simplicial
//! complexes. Everything is a pure function of the seed.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::colimit::{is_eden, Subcomplex};
use crate::error::{Error, Result};
use crate::hom::{search_maps, search_maps_with};
use crate::poset::FinPoset;
use crate::sset::{boundary, FinSimpSet, NormalSimplex, SimpMap, SimplexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub max_dim: usize,
    pub max_cells: usize,
    pub count: usize,
}

impl CorpusSpec {
    pub fn new(seed: u64, count: usize) -> Self {
        CorpusSpec { seed, max_dim: 3, max_cells: 12, count }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_dim > 3 || self.max_cells > 12 || self.max_cells == 0 {
            return Err(Error::Params("corpus needs max_dim <= 3 and 1 <= max_cells <= 12".into()));
        }
        Ok(())
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Attach one `n`-simplex along a random boundary map, if one exists.
/// With `distinct`, the boundary map is injective on vertices, which keeps a
/// non-singular set non-singular.
fn attach(x: &FinSimpSet, n: usize, distinct: bool, rng: &mut ChaCha8Rng) -> Option<FinSimpSet> {
    let xa = Arc::new(x.clone());
    let bd = Arc::new(boundary(n));
    let f = search_maps_with(&bd, &xa, 1, distinct, &mut |c: &mut Vec<usize>| c.shuffle(rng)).into_iter().next()?;
    // the top simplex of Δ[n] has the codimension-one faces of ∂Δ[n] as faces
    let faces: Vec<NormalSimplex> = (0..=n)
        .map(|j| {
            let keep: Vec<usize> = (0..=n).filter(|&v| v != j).collect();
            let id = bd
                .ids_of_dim(n - 1)
                .find(|&e| bd.vertices(e) == keep.as_slice())
                .expect("codimension-one face of the boundary");
            f.image(id).clone()
        })
        .collect();
    let mut counts = x.counts().to_vec();
    if counts.len() <= n {
        counts.resize(n + 1, 0);
    }
    counts[n] += 1;
    let mut table: Vec<Vec<Vec<NormalSimplex>>> = x.face_table().to_vec();
    table.resize(counts.len(), Vec::new());
    table[n].push(faces);
    FinSimpSet::new(counts, table).ok()
}

/// One random set. Non-singular outputs are guaranteed when `nonsingular`.
pub fn random_set(rng: &mut ChaCha8Rng, max_dim: usize, max_cells: usize, nonsingular: bool) -> FinSimpSet {
    // non-singular simplices need distinct vertices, so start with more of them
    let top = if nonsingular { 5 } else { 3 };
    let vertices = rng.gen_range(1..=top.min(max_cells));
    let mut x = FinSimpSet::new(vec![vertices], vec![vec![Vec::new(); vertices]]).expect("discrete set");
    let mut failures = 0;
    while x.total_nondegenerate() < max_cells && failures < 20 {
        let roll = rng.gen_range(0..10);
        if roll == 0 && x.count(0) < max_cells {
            let mut counts = x.counts().to_vec();
            counts[0] += 1;
            let mut table = x.face_table().to_vec();
            table[0].push(Vec::new());
            x = FinSimpSet::new(counts, table).expect("extra vertex");
            continue;
        }
        if max_dim == 0 {
            break;
        }
        let n = rng.gen_range(1..=max_dim);
        match attach(&x, n, nonsingular, rng) {
            Some(y) => x = y,
            None => failures += 1,
        }
    }
    x
}

/// The corpus of a spec: alternately arbitrary and non-singular sets.
pub fn generate(spec: &CorpusSpec) -> Result<Vec<FinSimpSet>> {
    spec.validate()?;
    let mut r = rng(spec.seed);
    Ok((0..spec.count).map(|k| random_set(&mut r, spec.max_dim, spec.max_cells, k % 2 == 1)).collect())
}

/// A random simplicial subset generated by a few simplices.
pub fn random_subcomplex(rng: &mut ChaCha8Rng, x: &Arc<FinSimpSet>) -> Subcomplex {
    let ids: Vec<SimplexId> = x.ids().collect();
    let k = rng.gen_range(0..=ids.len().min(3));
    let gens: Vec<SimplexId> = ids.choose_multiple(rng, k).copied().collect();
    Subcomplex::generated(x, gens).expect("ids of the ambient set")
}

/// A random eden: random vertices closed under edge predecessors, then the
/// full simplicial subset on them.
pub fn random_eden(rng: &mut ChaCha8Rng, x: &Arc<FinSimpSet>) -> Subcomplex {
    let nv = x.count(0);
    let mut inside = vec![false; nv];
    let k = rng.gen_range(0..=nv.min(2));
    for v in (0..nv).collect::<Vec<_>>().choose_multiple(rng, k) {
        inside[*v] = true;
    }
    loop {
        let mut changed = false;
        for e in x.ids_of_dim(1) {
            let v = x.vertices(e);
            if inside[v[1]] && !inside[v[0]] {
                inside[v[0]] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let verts: Vec<usize> = (0..nv).filter(|&v| inside[v]).collect();
    let a = Subcomplex::full_on_vertices(x, &verts);
    debug_assert!(is_eden(&a));
    a
}

/// A random poset on `size` elements: a random relation compatible with a
/// random linear order, closed up.
pub fn random_poset(rng: &mut ChaCha8Rng, size: usize) -> FinPoset {
    let mut order: Vec<usize> = (0..size).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for a in 0..size {
        for b in a + 1..size {
            if rng.gen_bool(0.35) {
                pairs.push((order[a], order[b]));
            }
        }
    }
    FinPoset::from_relation(size, &pairs).expect("relation along a linear order is acyclic")
}

/// A random map `x -> y`, if there is one.
pub fn random_map(rng: &mut ChaCha8Rng, x: &Arc<FinSimpSet>, y: &Arc<FinSimpSet>) -> Option<SimpMap> {
    search_maps(x, y, 1, &mut |c: &mut Vec<usize>| c.shuffle(rng)).into_iter().next()
}
