//! The Barratt nerve `B X = N(X^♯)`, Kan subdivision `Sd X`, the comparison
//! `b_X : Sd X -> B X`, and the last vertex map `d_X : Sd X -> X`.
//!
//! `Sd X` is the colimit of the cells `B(Δ[n]) = Sd(Δ[n])` over the simplices
//! of `X`. Degenerate simplices contribute no new cells, so it is computed as
//! one quotient of `⊔ B(Δ[dim x])` over the nondegenerate `x`: for each proper
//! face `μ` of `x` with `x·μ = y·σ` in normal form, the cell of `x` restricted
//! along `B(μ)` is glued to the cell of `y` along `B(σ)`. This is the same
//! congruence as attaching cells skeleton by skeleton, imposed in one pass.

use std::sync::Arc;

use crate::colimit::coproduct;
use crate::delta::{subsets_of, Operator};
use crate::error::Result;
use crate::poset::{nerve_map, sharp, sharp_map, FinPoset, Nerve};
use crate::quotient::{descend, quotient};
use crate::sset::{FinSimpSet, NormalSimplex, SimpMap, SimplexId};

/// `B(Δ[n])` with the faces of `Δ[n]` it is built from.
struct Cell {
    nerve: Nerve,
    /// face subsets of `[n]`, in the element order of the face poset
    faces: Vec<Vec<usize>>,
}

impl Cell {
    fn new(n: usize) -> Cell {
        let faces: Vec<Vec<usize>> = (0..=n).flat_map(|m| subsets_of(n + 1, m + 1)).collect();
        let p = sharp(&crate::sset::simplex(n));
        Cell { nerve: Nerve::new(&p), faces }
    }

    fn element(&self, face: &[usize]) -> usize {
        self.faces.iter().position(|f| f.as_slice() == face).expect("face of the standard simplex")
    }

    /// `B(α)` applied to the chain of a nondegenerate simplex of this cell;
    /// `target` is the cell of `Δ[α.target_dim()]`.
    fn push(&self, chain_id: SimplexId, alpha: &Operator, target: &Cell) -> NormalSimplex {
        let seq: Vec<usize> = self
            .nerve
            .chain(chain_id)
            .iter()
            .map(|&e| {
                let mut img: Vec<usize> = self.faces[e].iter().map(|&v| alpha.apply(v)).collect();
                img.dedup();
                target.element(&img)
            })
            .collect();
        target.nerve.simplex_from_sequence(&seq).expect("image of a chain of faces is a chain")
    }
}

/// `Sd X` together with the cell structure it was glued from.
pub struct Subdivision {
    pub base: Arc<FinSimpSet>,
    pub set: Arc<FinSimpSet>,
    cells: Vec<Cell>,
    /// `⊔ B(Δ[dim x])` and its injections, one per nondegenerate `x`
    cells_union: Arc<FinSimpSet>,
    injections: Vec<SimpMap>,
    /// `⊔ B(Δ[dim x]) -> Sd X`
    pub quotient: SimpMap,
}

impl std::fmt::Debug for Subdivision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subdivision({:?} -> {:?})", self.base, self.set)
    }
}

impl Subdivision {
    pub fn new(x: &Arc<FinSimpSet>) -> Result<Subdivision> {
        let top = x.dim().unwrap_or(0);
        let cells: Vec<Cell> = (0..=top).map(Cell::new).collect();
        let ids: Vec<SimplexId> = x.ids().collect();
        let summands: Vec<Arc<FinSimpSet>> = ids.iter().map(|id| cells[id.dim].nerve.set.clone()).collect();
        let (u, injections) = coproduct(&summands);
        let mut relations = Vec::new();
        for (k, &id) in ids.iter().enumerate() {
            let n = id.dim;
            for m in 0..n {
                for face in subsets_of(n + 1, m + 1) {
                    let mu = Operator::face_from_set(n, &face)?;
                    let y = x.apply_face(id, &mu);
                    let ky = x.global_index(y.base);
                    for c in cells[m].nerve.set.ids() {
                        let left = injections[k].apply(&cells[m].push(c, &mu, &cells[n]));
                        let right = injections[ky].apply(&cells[m].push(c, &y.degeneracy, &cells[y.base.dim]));
                        relations.push((left, right));
                    }
                }
            }
        }
        let q = quotient(&u, &relations)?;
        // name each vertex of Sd X after the simplex it is the barycentre of
        let mut set = (*q.set).clone();
        for (k, &id) in ids.iter().enumerate() {
            for v in cells[id.dim].nerve.set.ids_of_dim(0) {
                let face = &cells[id.dim].faces[cells[id.dim].nerve.chain(v)[0]];
                let mu = Operator::face_from_set(id.dim, face)?;
                let b = x.apply_face(id, &mu).base;
                let name = x.label(b).map(str::to_string).unwrap_or_else(|| format!("{b:?}"));
                let w = q.map.apply(&injections[k].apply(&NormalSimplex::nondegenerate(v)));
                set.set_label(w.base, name);
            }
        }
        let set = Arc::new(set);
        let quotient = q.map.retarget(&set);
        Ok(Subdivision { base: x.clone(), set, cells, cells_union: u, injections, quotient })
    }

    /// Defines a map out of `Sd X` cell by cell; `on_cell(x, chain)` gives the
    /// image of a nondegenerate chain in the cell of `x`.
    fn descend_cells(
        &self,
        target: &Arc<FinSimpSet>,
        mut on_cell: impl FnMut(SimplexId, SimplexId) -> NormalSimplex,
    ) -> Result<SimpMap> {
        let u = &self.cells_union;
        let mut images: Vec<Vec<NormalSimplex>> =
            u.counts().iter().map(|&c| vec![NormalSimplex::nondegenerate(SimplexId::new(0, 0)); c]).collect();
        for (k, id) in self.base.ids().enumerate() {
            for c in self.cells[id.dim].nerve.set.ids() {
                let w = self.injections[k].image(c).base;
                images[w.dim][w.index] = on_cell(id, c);
            }
        }
        let h = SimpMap::from_images(u.clone(), target.clone(), images)?;
        descend(&self.quotient, &h)
    }

    /// `b_X : Sd X -> B X`, into the nerve of `X^♯` as built by `barratt`.
    pub fn b_map(&self) -> Result<SimpMap> {
        let p = sharp(&self.base);
        let bx = Nerve::new(&p);
        let x = &self.base;
        self.descend_cells(&bx.set, |id, c| {
            let cell = &self.cells[id.dim];
            let seq: Vec<usize> = cell
                .nerve
                .chain(c)
                .iter()
                .map(|&e| {
                    let mu = Operator::face_from_set(id.dim, &cell.faces[e]).unwrap();
                    x.global_index(x.apply_face(id, &mu).base)
                })
                .collect();
            bx.simplex_from_sequence(&seq).expect("faces of x form a chain in X^♯")
        })
    }

    /// `d_X : Sd X -> X`, a chain of faces going to its sequence of last vertices.
    pub fn last_vertex(&self) -> Result<SimpMap> {
        let x = &self.base;
        self.descend_cells(x, |id, c| {
            let cell = &self.cells[id.dim];
            let images: Vec<usize> = cell.nerve.chain(c).iter().map(|&e| *cell.faces[e].last().unwrap()).collect();
            let alpha = Operator::from_images_unchecked(id.dim, images);
            x.act_unchecked(&NormalSimplex::nondegenerate(id), &alpha)
        })
    }

    /// `Sd(f)` for `f : self.base -> target.base`.
    pub fn map(&self, f: &SimpMap, target: &Subdivision) -> Result<SimpMap> {
        let t = target;
        self.descend_cells(&t.set, |id, c| {
            let y = f.image(id);
            let ky = t.base.global_index(y.base);
            let pushed = self.cells[id.dim].push(c, &y.degeneracy, &t.cells[y.base.dim]);
            t.quotient.apply(&t.injections[ky].apply(&pushed))
        })
    }
}

/// `B X = N(X^♯)`.
pub fn barratt(x: &FinSimpSet) -> FinSimpSet {
    crate::poset::nerve(&sharp(x))
}

/// `B f = N(f^♯)` between freshly built Barratt nerves.
pub fn barratt_map(f: &SimpMap) -> SimpMap {
    let m = sharp_map(f);
    nerve_map(&m, &Nerve::new(&m.source), &Nerve::new(&m.target))
}

pub fn sd(x: &Arc<FinSimpSet>) -> Result<Arc<FinSimpSet>> {
    Ok(Subdivision::new(x)?.set)
}

/// `Sd^k X`.
pub fn sd_iter(x: &Arc<FinSimpSet>, k: usize) -> Result<Arc<FinSimpSet>> {
    let mut cur = x.clone();
    for _ in 0..k {
        cur = sd(&cur)?;
    }
    Ok(cur)
}

/// `Sd(f)` between freshly built subdivisions of its source and target.
pub fn sd_map(f: &SimpMap) -> Result<SimpMap> {
    let s = Subdivision::new(f.source())?;
    let t = Subdivision::new(f.target())?;
    s.map(f, &t)
}

pub fn b_map(x: &Arc<FinSimpSet>) -> Result<SimpMap> {
    Subdivision::new(x)?.b_map()
}

pub fn last_vertex(x: &Arc<FinSimpSet>) -> Result<SimpMap> {
    Subdivision::new(x)?.last_vertex()
}

/// The face poset of `Δ[n]`, exposed for cross-checks.
pub fn simplex_face_poset(n: usize) -> FinPoset {
    sharp(&crate::sset::simplex(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimit::{collapse, Subcomplex};
    use crate::iso::are_isomorphic;
    use crate::sset::{boundary, simplex};

    fn sphere(n: usize) -> Arc<FinSimpSet> {
        let d = Arc::new(simplex(n));
        collapse(&Subcomplex::new(&d, d.ids().filter(|x| x.dim < n)).unwrap()).unwrap().apex
    }

    #[test]
    fn barratt_examples() {
        assert_eq!(barratt(&simplex(1)).counts(), &[3, 2]);
        assert_eq!(barratt(&simplex(2)).counts(), &[7, 12, 6]);
        let b = Arc::new(barratt(&sphere(1)));
        assert!(are_isomorphic(&b, &Arc::new(simplex(1))).is_some());
    }

    #[test]
    fn sd_examples() {
        assert_eq!(sd(&Arc::new(simplex(1))).unwrap().counts(), &[3, 2]);
        let hex = sd(&Arc::new(boundary(2))).unwrap();
        assert_eq!(hex.counts(), &[6, 6]);
        assert_eq!(sd(&hex).unwrap().counts(), &[12, 12]);
        assert_eq!(sd(&Arc::new(simplex(0))).unwrap().counts(), &[1]);
        let s1 = sd(&sphere(1)).unwrap();
        assert_eq!(s1.counts(), &[2, 2]);
        assert!(s1.is_nonsingular());
    }

    #[test]
    fn b_map_examples() {
        let d2 = Arc::new(simplex(2));
        let b = b_map(&d2).unwrap();
        assert!(b.is_valid() && b.is_isomorphism());
        let b = b_map(&sphere(1)).unwrap();
        assert!(b.is_valid() && b.is_degreewise_surjective() && !b.is_degreewise_injective());
        let b = b_map(&Arc::new(simplex(0))).unwrap();
        assert!(b.is_isomorphism());
    }

    #[test]
    fn last_vertex_on_interval() {
        let d1 = Arc::new(simplex(1));
        let s = Subdivision::new(&d1).unwrap();
        let d = s.last_vertex().unwrap();
        assert!(d.is_valid());
        for v in s.set.ids_of_dim(0) {
            let expect = match s.set.label(v).unwrap() {
                "0" => 0,
                _ => 1,
            };
            assert_eq!(d.image(v).base, SimplexId::new(0, expect));
        }
    }

    #[test]
    fn sd_map_functorial_basics() {
        let d2 = Arc::new(simplex(2));
        let s = Subdivision::new(&d2).unwrap();
        let id = s.map(&SimpMap::identity(&d2), &s).unwrap();
        assert_eq!(id, SimpMap::identity(&s.set));
        let b2 = Subcomplex::new(&d2, d2.ids().filter(|x| x.dim < 2)).unwrap();
        let (_, inc) = b2.inclusion();
        let f = sd_map(&inc).unwrap();
        assert!(f.is_valid() && f.is_degreewise_injective());
        let pt = Arc::new(simplex(0));
        let d1 = Arc::new(simplex(1));
        let c = sd_map(&SimpMap::to_point(&d1, &pt).unwrap()).unwrap();
        assert_eq!(c.target().counts(), &[1]);
        assert_eq!(c.source().counts(), &[3, 2]);
    }
}
