use std::collections::HashSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// One simplex of a Δ-complex.
///
/// `vertices` are indices into the dimension-0 list, strictly increasing.
/// `facets[i]` is the index (one dimension down) of the face omitting
/// `vertices[i]`; it enters the boundary with sign `(-1)^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub id: String,
    pub vertices: Vec<usize>,
    pub facets: Vec<usize>,
}

impl Simplex {
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// A Δ-complex with ordered vertices and explicit facet incidence.
///
/// Several simplices may share a vertex tuple.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DeltaComplex {
    dims: Vec<Vec<Simplex>>,
}

impl DeltaComplex {
    pub fn new(mut dims: Vec<Vec<Simplex>>) -> Result<Self> {
        while dims.last().is_some_and(Vec::is_empty) {
            dims.pop();
        }
        let complex = DeltaComplex { dims };
        complex.check()?;
        Ok(complex)
    }

    fn check(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for (a, list) in self.dims.iter().enumerate() {
            for (idx, s) in list.iter().enumerate() {
                if !seen.insert(s.id.as_str()) {
                    return Err(Error::InvalidComplex(format!("duplicate simplex id '{}'", s.id)));
                }
                if s.vertices.len() != a + 1 {
                    return Err(Error::InvalidComplex(format!(
                        "simplex '{}' in dimension {a} has {} vertices",
                        s.id,
                        s.vertices.len()
                    )));
                }
                if a == 0 {
                    if s.vertices != [idx] || !s.facets.is_empty() {
                        return Err(Error::InvalidComplex(format!(
                            "vertex '{}' must reference itself and have no facets",
                            s.id
                        )));
                    }
                    continue;
                }
                if s.vertices.windows(2).any(|w| w[0] >= w[1])
                    || s.vertices.iter().any(|&v| v >= self.dims[0].len())
                {
                    return Err(Error::InvalidComplex(format!(
                        "simplex '{}' must list distinct vertices in increasing order",
                        s.id
                    )));
                }
                if s.facets.len() != a + 1 {
                    return Err(Error::InvalidComplex(format!(
                        "simplex '{}' needs {} facets",
                        s.id,
                        a + 1
                    )));
                }
                for (i, &f) in s.facets.iter().enumerate() {
                    let Some(face) = self.dims[a - 1].get(f) else {
                        return Err(Error::InvalidComplex(format!(
                            "simplex '{}' references missing facet {f}",
                            s.id
                        )));
                    };
                    let mut expected = s.vertices.clone();
                    expected.remove(i);
                    if face.vertices != expected {
                        return Err(Error::InvalidComplex(format!(
                            "facet {i} of '{}' is '{}', which does not omit vertex position {i}",
                            s.id, face.id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn count(&self, a: usize) -> usize {
        self.dims.get(a).map_or(0, Vec::len)
    }

    /// Simplex counts per dimension, up to the top dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.dims.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, a: usize) -> &[Simplex] {
        self.dims.get(a).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, a: usize, idx: usize) -> &Simplex {
        &self.dims[a][idx]
    }

    pub fn find(&self, a: usize, id: &str) -> Option<usize> {
        self.simplices(a).iter().position(|s| s.id == id)
    }

    pub fn total_simplices(&self) -> usize {
        self.dims.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(a, l)| if a % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// `∂_a : C_a → C_{a-1}` as a `count(a-1) × count(a)` matrix; `∂_0` is `0 × count(0)`.
    pub fn boundary_matrix(&self, a: usize) -> IntMatrix {
        if a == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        let mut m = IntMatrix::zeros(self.count(a - 1), self.count(a));
        for (j, s) in self.simplices(a).iter().enumerate() {
            for (i, &f) in s.facets.iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[(f, j)] += BigInt::from(sign);
            }
        }
        m
    }

    /// Boundary of a single simplex as a chain.
    pub fn boundary_of(&self, a: usize, idx: usize) -> Vec<BigInt> {
        self.boundary_matrix(a).column(idx)
    }
}

/// Incremental construction of a [`DeltaComplex`].
#[derive(Default)]
pub struct ComplexBuilder {
    dims: Vec<Vec<Simplex>>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, id: impl Into<String>) -> usize {
        if self.dims.is_empty() {
            self.dims.push(Vec::new());
        }
        let idx = self.dims[0].len();
        self.dims[0].push(Simplex {
            id: id.into(),
            vertices: vec![idx],
            facets: vec![],
        });
        idx
    }

    /// Edge between vertices `u < v`.
    pub fn edge(&mut self, id: impl Into<String>, u: usize, v: usize) -> usize {
        assert!(u < v, "edge endpoints must be increasing");
        self.simplex(1, id, vec![v, u])
    }

    /// Adds a simplex of dimension `a` given its facets in omitted-position order.
    /// The vertex tuple is read off the facets.
    pub fn simplex(&mut self, a: usize, id: impl Into<String>, facets: Vec<usize>) -> usize {
        assert!(a >= 1 && a < self.dims.len() + 1);
        let vertices = if a == 1 {
            vec![facets[1], facets[0]]
        } else {
            let f0 = &self.dims[a - 1][facets[0]].vertices;
            let f1 = &self.dims[a - 1][facets[1]].vertices;
            let mut v = vec![f1[0]];
            v.extend_from_slice(f0);
            v
        };
        while self.dims.len() <= a {
            self.dims.push(Vec::new());
        }
        self.dims[a].push(Simplex {
            id: id.into(),
            vertices,
            facets,
        });
        self.dims[a].len() - 1
    }

    pub fn build(self) -> Result<DeltaComplex> {
        DeltaComplex::new(self.dims)
    }
}

/// A simplicial chain map given simplex-wise: each source simplex goes to
/// `sign · target simplex` of the same dimension.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: DeltaComplex,
    target: DeltaComplex,
    images: Vec<Vec<(usize, i8)>>,
}

impl ChainMap {
    pub fn new(
        source: DeltaComplex,
        target: DeltaComplex,
        images: Vec<Vec<(usize, i8)>>,
    ) -> Result<Self> {
        let top = source.counts().len();
        if images.len() < top {
            return Err(Error::InvalidComplex("chain map is missing dimensions".into()));
        }
        for (a, img) in images.iter().enumerate() {
            if img.len() != source.count(a) {
                return Err(Error::InvalidComplex(format!(
                    "chain map has {} images in dimension {a}, source has {} simplices",
                    img.len(),
                    source.count(a)
                )));
            }
            if img.iter().any(|&(t, s)| t >= target.count(a) || (s != 1 && s != -1)) {
                return Err(Error::InvalidComplex(format!(
                    "chain map image out of range in dimension {a}"
                )));
            }
        }
        let map = ChainMap {
            source,
            target,
            images,
        };
        for a in 1..top {
            let lhs = map.target.boundary_matrix(a).mul(&map.matrix(a));
            let rhs = map.matrix(a - 1).mul(&map.source.boundary_matrix(a));
            if lhs != rhs {
                return Err(Error::NotAChainMap(a));
            }
        }
        Ok(map)
    }

    pub fn identity(complex: &DeltaComplex) -> Self {
        let images = complex
            .counts()
            .iter()
            .map(|&n| (0..n).map(|i| (i, 1)).collect())
            .collect();
        ChainMap {
            source: complex.clone(),
            target: complex.clone(),
            images,
        }
    }

    pub fn source(&self) -> &DeltaComplex {
        &self.source
    }

    pub fn target(&self) -> &DeltaComplex {
        &self.target
    }

    /// Image of simplex `idx` in dimension `a` as `(target index, sign)`.
    pub fn image(&self, a: usize, idx: usize) -> (usize, i8) {
        self.images[a][idx]
    }

    /// `f_a` as a `target.count(a) × source.count(a)` matrix.
    pub fn matrix(&self, a: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target.count(a), self.source.count(a));
        if let Some(img) = self.images.get(a) {
            for (j, &(t, s)) in img.iter().enumerate() {
                m[(t, j)] = BigInt::from(s);
            }
        }
        m
    }

    pub fn apply(&self, a: usize, chain: &[BigInt]) -> Vec<BigInt> {
        self.matrix(a).mul_vec(chain)
    }

    /// `next ∘ self`
    pub fn then(&self, next: &ChainMap) -> Result<ChainMap> {
        if self.target != next.source {
            return Err(Error::InvalidComplex(
                "composed chain maps do not share a complex".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(a, img)| {
                img.iter()
                    .map(|&(t, s)| {
                        let (u, s2) = next.images[a][t];
                        (u, s * s2)
                    })
                    .collect()
            })
            .collect();
        Ok(ChainMap {
            source: self.source.clone(),
            target: next.target.clone(),
            images,
        })
    }
}

/// Sign of the permutation that sorts `seq` (distinct entries).
pub(crate) fn sorting_sign(seq: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
