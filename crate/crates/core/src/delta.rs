//! The simplex category: monotone maps `[m] -> [n]` stored as explicit image lists.
//!
//! Every simplex action in the crate goes through [`Operator`]. Composition is
//! pointwise and the epi-mono factorization is unique, which is what makes the
//! Eilenberg-Zilber normal form of a simplex computable.

use std::fmt;

use crate::error::{Error, Result};

/// A monotone map `[source_dim] -> [target_dim]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operator {
    target: usize,
    images: Vec<usize>,
}

/// The three families of elementary operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementaryKind {
    /// `δ_j : [n-1] -> [n]`, omits `j`.
    Face,
    /// `σ_j : [n] -> [n-1]`, repeats `j`. The `dim` argument is the source.
    Degeneracy,
    /// `ε_j : [0] -> [n]`, picks `j`.
    Vertex,
}

impl Operator {
    pub fn new(target: usize, images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::Operator("an operator needs at least one image".into()));
        }
        if images.iter().any(|&v| v > target) {
            return Err(Error::Operator(format!("image out of range for target [{target}]: {images:?}")));
        }
        if images.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Operator(format!("images not monotone: {images:?}")));
        }
        Ok(Operator { target, images })
    }

    /// Caller guarantees monotone images within range.
    pub(crate) fn from_images_unchecked(target: usize, images: Vec<usize>) -> Self {
        debug_assert!(!images.is_empty());
        debug_assert!(images.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(images.iter().all(|&v| v <= target));
        Operator { target, images }
    }

    pub fn identity(n: usize) -> Self {
        Operator { target: n, images: (0..=n).collect() }
    }

    /// The constant operator `[m] -> [n]` with value `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        assert!(v <= n);
        Operator { target: n, images: vec![v; m + 1] }
    }

    pub fn elementary(kind: ElementaryKind, index: usize, dim: usize) -> Result<Self> {
        match kind {
            ElementaryKind::Face => {
                if dim == 0 || index > dim {
                    return Err(Error::Range(format!("face δ_{index} into [{dim}]")));
                }
                let images = (0..dim).map(|k| if k < index { k } else { k + 1 }).collect();
                Ok(Operator { target: dim, images })
            }
            ElementaryKind::Degeneracy => {
                if dim == 0 || index >= dim {
                    return Err(Error::Range(format!("degeneracy σ_{index} out of [{dim}]")));
                }
                let images = (0..=dim).map(|k| if k <= index { k } else { k - 1 }).collect();
                Ok(Operator { target: dim - 1, images })
            }
            ElementaryKind::Vertex => {
                if index > dim {
                    return Err(Error::Range(format!("vertex ε_{index} into [{dim}]")));
                }
                Ok(Operator { target: dim, images: vec![index] })
            }
        }
    }

    pub fn face(index: usize, dim: usize) -> Self {
        Self::elementary(ElementaryKind::Face, index, dim).expect("face index in range")
    }

    pub fn degeneracy(index: usize, dim: usize) -> Self {
        Self::elementary(ElementaryKind::Degeneracy, index, dim).expect("degeneracy index in range")
    }

    pub fn vertex(index: usize, dim: usize) -> Self {
        Self::elementary(ElementaryKind::Vertex, index, dim).expect("vertex index in range")
    }

    /// The face operator whose image is the given strictly increasing set.
    pub fn face_from_set(target: usize, set: &[usize]) -> Result<Self> {
        if set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Operator(format!("not strictly increasing: {set:?}")));
        }
        Operator::new(target, set.to_vec())
    }

    pub fn source_dim(&self) -> usize {
        self.images.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source_dim() && self.images.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// Strictly increasing.
    pub fn is_injective(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.images[0] == 0
            && *self.images.last().unwrap() == self.target
            && self.images.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Operator) -> Result<Operator> {
        if inner.target != self.source_dim() {
            return Err(Error::Composition(format!(
                "cannot compose [{}]->[{}] after [{}]->[{}]",
                self.source_dim(),
                self.target,
                inner.source_dim(),
                inner.target
            )));
        }
        Ok(self.compose_unchecked(inner))
    }

    pub(crate) fn compose_unchecked(&self, inner: &Operator) -> Operator {
        debug_assert_eq!(inner.target, self.source_dim());
        Operator { target: self.target, images: inner.images.iter().map(|&k| self.images[k]).collect() }
    }

    /// Unique factorization `self = mono ∘ epi` with `epi` surjective and
    /// `mono` injective. Returned as `(epi, mono)`.
    pub fn epi_mono_factor(&self) -> (Operator, Operator) {
        let mut mono_images: Vec<usize> = Vec::with_capacity(self.images.len());
        let mut epi_images = Vec::with_capacity(self.images.len());
        for &v in &self.images {
            if mono_images.last() != Some(&v) {
                mono_images.push(v);
            }
            epi_images.push(mono_images.len() - 1);
        }
        let k = mono_images.len() - 1;
        (Operator { target: k, images: epi_images }, Operator { target: self.target, images: mono_images })
    }

    /// The section of a surjection sending each output to its smallest preimage.
    pub fn minimal_section(&self) -> Result<Operator> {
        if !self.is_surjective() {
            return Err(Error::Operator(format!("{self:?} is not surjective")));
        }
        let mut images = Vec::with_capacity(self.target + 1);
        for (k, &v) in self.images.iter().enumerate() {
            if images.len() == v {
                images.push(k);
            }
        }
        Ok(Operator { target: self.source_dim(), images })
    }

    /// All sections of a surjection, in lexicographic order of images.
    pub fn sections(&self) -> Result<Vec<Operator>> {
        if !self.is_surjective() {
            return Err(Error::Operator(format!("{self:?} is not surjective")));
        }
        let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); self.target + 1];
        for (k, &v) in self.images.iter().enumerate() {
            fibres[v].push(k);
        }
        let mut out = vec![Vec::new()];
        for fibre in &fibres {
            let mut next = Vec::new();
            for partial in &out {
                for &k in fibre {
                    let mut p: Vec<usize> = partial.clone();
                    p.push(k);
                    next.push(p);
                }
            }
            out = next;
        }
        Ok(out.into_iter().map(|images| Operator { target: self.source_dim(), images }).collect())
    }

    /// All monotone maps `[m] -> [n]` in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<Operator> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; m + 1];
        loop {
            out.push(Operator { target: n, images: cur.clone() });
            // next nondecreasing sequence
            let mut pos = m as isize;
            while pos >= 0 && cur[pos as usize] == n {
                pos -= 1;
            }
            if pos < 0 {
                break;
            }
            let v = cur[pos as usize] + 1;
            for slot in cur.iter_mut().skip(pos as usize) {
                *slot = v;
            }
        }
        out
    }

    /// All surjections `[m] -> [n]` in lexicographic order.
    pub fn surjections(m: usize, n: usize) -> Vec<Operator> {
        if n > m {
            return Vec::new();
        }
        // choose the n positions among 1..=m where the value steps up
        let mut out = Vec::new();
        for steps in subsets(m, n) {
            let mut images = Vec::with_capacity(m + 1);
            let mut v = 0;
            images.push(0);
            for k in 1..=m {
                if steps.contains(&k) {
                    v += 1;
                }
                images.push(v);
            }
            out.push(Operator { target: n, images });
        }
        out.sort();
        out
    }

    /// All face operators (injections) `[k] -> [n]`, `k <= n`, by increasing `k`
    /// then lexicographic.
    pub fn all_faces(n: usize) -> Vec<Operator> {
        let mut out = Vec::new();
        for k in 0..=n {
            for set in subsets_of(n + 1, k + 1) {
                out.push(Operator { target: n, images: set });
            }
        }
        out
    }

    /// `[n] -> [n - (j - i)]` collapsing the interval `i..=j` onto `i`.
    pub fn interval_collapse(n: usize, i: usize, j: usize) -> Operator {
        assert!(i <= j && j <= n);
        let w = j - i;
        let images = (0..=n)
            .map(|k| {
                if k <= i {
                    k
                } else if k <= j {
                    i
                } else {
                    k - w
                }
            })
            .collect();
        Operator { target: n - w, images }
    }

    /// Textual encoding `m n : i0 i1 ... im`.
    pub fn encode(&self) -> String {
        let imgs: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        format!("{} {} : {}", self.source_dim(), self.target, imgs.join(" "))
    }

    pub fn decode(s: &str) -> Result<Operator> {
        let (head, tail) = s.split_once(':').ok_or_else(|| Error::Parse(format!("operator `{s}` lacks ':'")))?;
        let dims: Vec<usize> = parse_usizes(head)?;
        let images = parse_usizes(tail)?;
        if dims.len() != 2 {
            return Err(Error::Parse(format!("operator `{s}` needs `m n`")));
        }
        if images.len() != dims[0] + 1 {
            return Err(Error::Parse(format!("operator `{s}` needs {} images", dims[0] + 1)));
        }
        Operator::new(dims[1], images)
    }
}

fn parse_usizes(s: &str) -> Result<Vec<usize>> {
    s.split_whitespace().map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("`{t}`: {e}")))).collect()
}

/// Strictly increasing `k`-subsets of `{1, ..., m}`.
fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    subsets_of(m, k).into_iter().map(|s| s.into_iter().map(|v| v + 1).collect()).collect()
}

/// Strictly increasing `k`-subsets of `{0, ..., n-1}` in lexicographic order.
pub(crate) fn subsets_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut pos = k as isize - 1;
        while pos >= 0 && cur[pos as usize] == n - k + pos as usize {
            pos -= 1;
        }
        if pos < 0 {
            break;
        }
        cur[pos as usize] += 1;
        for q in pos as usize + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
    out
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]{:?}", self.source_dim(), self.target, self.images)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}
