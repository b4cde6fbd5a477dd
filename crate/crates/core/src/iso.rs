//! Isomorphism search between finite simplicial sets.
//!
//! Colour refinement on the face incidence structure prunes candidates, then
//! a backtracking search assigns nondegenerate simplices from the top
//! dimension down. Assigning a simplex forces the images of all its faces, so
//! most of the work is propagation rather than branching.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::delta::Operator;
use crate::sset::{FinSimpSet, NormalSimplex, SimpMap, SimplexId};

struct Flat {
    ids: Vec<SimplexId>,
    offset: Vec<usize>,
    /// per simplex: (face base, degeneracy) for every face index
    faces: Vec<Vec<(usize, Operator)>>,
    /// per simplex: (coface, position)
    cofaces: Vec<Vec<(usize, usize)>>,
}

impl Flat {
    fn new(x: &FinSimpSet) -> Self {
        let mut offset = vec![0];
        for &c in x.counts() {
            offset.push(offset.last().unwrap() + c);
        }
        let ids: Vec<SimplexId> = x.ids().collect();
        let g = |id: SimplexId| offset[id.dim] + id.index;
        let mut faces = Vec::with_capacity(ids.len());
        let mut cofaces = vec![Vec::new(); ids.len()];
        for (k, &id) in ids.iter().enumerate() {
            let row: Vec<(usize, Operator)> = if id.dim == 0 {
                Vec::new()
            } else {
                (0..=id.dim)
                    .map(|j| {
                        let f = x.face(id, j);
                        (g(f.base), f.degeneracy.clone())
                    })
                    .collect()
            };
            for (j, (b, _)) in row.iter().enumerate() {
                cofaces[*b].push((k, j));
            }
            faces.push(row);
        }
        Flat { ids, offset, faces, cofaces }
    }

    fn len(&self) -> usize {
        self.ids.len()
    }
}

/// Joint colour refinement; returns colours for both sets in a shared palette.
fn refine(a: &Flat, b: &Flat) -> (Vec<usize>, Vec<usize>) {
    let initial = |f: &Flat, k: usize| -> Vec<usize> {
        let mut sig = vec![f.ids[k].dim, f.cofaces[k].len()];
        for (_, d) in &f.faces[k] {
            sig.push(d.target_dim());
            sig.extend_from_slice(d.images());
        }
        sig
    };
    let mut palette: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let colour = |sig: Vec<usize>, palette: &mut BTreeMap<Vec<usize>, usize>| {
        let n = palette.len();
        *palette.entry(sig).or_insert(n)
    };
    let sa: Vec<Vec<usize>> = (0..a.len()).map(|k| initial(a, k)).collect();
    let sb: Vec<Vec<usize>> = (0..b.len()).map(|k| initial(b, k)).collect();
    let mut ca: Vec<usize> = sa.into_iter().map(|s| colour(s, &mut palette)).collect();
    let mut cb: Vec<usize> = sb.into_iter().map(|s| colour(s, &mut palette)).collect();
    let mut classes = palette.len();
    loop {
        let step = |f: &Flat, c: &[usize], k: usize| -> Vec<usize> {
            let mut sig = vec![c[k]];
            sig.extend(f.faces[k].iter().map(|(b, _)| c[*b]));
            sig.push(usize::MAX);
            let mut co: Vec<(usize, usize)> = f.cofaces[k].iter().map(|&(x, j)| (j, c[x])).collect();
            co.sort_unstable();
            for (j, col) in co {
                sig.push(j);
                sig.push(col);
            }
            sig
        };
        let mut palette: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let na: Vec<Vec<usize>> = (0..a.len()).map(|k| step(a, &ca, k)).collect();
        let nb: Vec<Vec<usize>> = (0..b.len()).map(|k| step(b, &cb, k)).collect();
        let na: Vec<usize> = na.into_iter().map(|s| colour(s, &mut palette)).collect();
        let nb: Vec<usize> = nb.into_iter().map(|s| colour(s, &mut palette)).collect();
        let n = palette.len();
        ca = na;
        cb = nb;
        if n == classes {
            break;
        }
        classes = n;
    }
    (ca, cb)
}

struct Search<'a> {
    a: &'a Flat,
    b: &'a Flat,
    ca: Vec<usize>,
    cb: Vec<usize>,
    fwd: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, x: usize, y: usize) -> bool {
        match self.fwd[x] {
            Some(z) => return z == y,
            None if self.used[y] || self.ca[x] != self.cb[y] => return false,
            None => {}
        }
        self.fwd[x] = Some(y);
        self.used[y] = true;
        self.trail.push(x);
        for j in 0..self.a.faces[x].len() {
            let (fx, ref dx) = self.a.faces[x][j];
            let (fy, ref dy) = self.b.faces[y][j];
            if dx != dy || !self.assign(fx, fy) {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            let y = self.fwd[x].take().unwrap();
            self.used[y] = false;
        }
    }

    fn candidates(&self, x: usize) -> Vec<usize> {
        // restrict through an already assigned face if there is one
        for (j, (fx, _)) in self.a.faces[x].iter().enumerate() {
            if let Some(fy) = self.fwd[*fx] {
                return self.b.cofaces[fy]
                    .iter()
                    .filter(|&&(y, p)| p == j && !self.used[y] && self.cb[y] == self.ca[x])
                    .map(|&(y, _)| y)
                    .collect();
            }
        }
        let d = self.a.ids[x].dim;
        (self.b.offset[d]..self.b.offset[d + 1]).filter(|&y| !self.used[y] && self.cb[y] == self.ca[x]).collect()
    }

    fn next(&self) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in (0..self.a.len()).rev() {
            if self.fwd[x].is_some() {
                continue;
            }
            if let Some((bx, _)) = &best {
                if self.a.ids[*bx].dim > self.a.ids[x].dim {
                    break;
                }
            }
            let c = self.candidates(x);
            if best.as_ref().is_none_or(|(_, bc)| c.len() < bc.len()) {
                let done = c.len() <= 1;
                best = Some((x, c));
                if done {
                    break;
                }
            }
        }
        best
    }

    fn run(&mut self) -> bool {
        let Some((x, cands)) = self.next() else { return true };
        for y in cands {
            let mark = self.trail.len();
            if self.assign(x, y) && self.run() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// An isomorphism `x -> y` if one exists.
pub fn are_isomorphic(x: &Arc<FinSimpSet>, y: &Arc<FinSimpSet>) -> Option<SimpMap> {
    if x.counts() != y.counts() {
        return None;
    }
    let a = Flat::new(x);
    let b = Flat::new(y);
    let (ca, cb) = refine(&a, &b);
    let mut hist: BTreeMap<usize, isize> = BTreeMap::new();
    for &c in &ca {
        *hist.entry(c).or_default() += 1;
    }
    for &c in &cb {
        *hist.entry(c).or_default() -= 1;
    }
    if hist.values().any(|&v| v != 0) {
        return None;
    }
    let n = a.len();
    let mut s = Search { a: &a, b: &b, ca, cb, fwd: vec![None; n], used: vec![false; n], trail: Vec::new() };
    if !s.run() {
        return None;
    }
    let mut images: Vec<Vec<NormalSimplex>> = x.counts().iter().map(|&c| Vec::with_capacity(c)).collect();
    for (k, id) in a.ids.iter().enumerate() {
        images[id.dim].push(NormalSimplex::nondegenerate(b.ids[s.fwd[k].unwrap()]));
    }
    let f = SimpMap::new(x.clone(), y.clone(), images).expect("search yields a simplicial map");
    debug_assert!(f.is_isomorphism());
    Some(f)
}
