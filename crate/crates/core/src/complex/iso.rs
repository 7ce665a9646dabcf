use super::delta::DeltaComplex;

/// Whether two Δ-complexes are isomorphic as unoriented incidence
/// structures: a bijection on simplices, dimension by dimension, carrying
/// the face omitting `v` to the face omitting the image of `v`.
///
/// Backtracking search; meant for the small complexes used in fixtures
/// and tests.
pub fn is_isomorphic(a: &DeltaComplex, b: &DeltaComplex) -> bool {
    if a.counts() != b.counts() {
        return false;
    }
    let order: Vec<(usize, usize)> = a
        .counts()
        .iter()
        .enumerate()
        .flat_map(|(d, &n)| (0..n).map(move |i| (d, i)))
        .collect();
    let mut state = Search {
        a,
        b,
        forward: a.counts().iter().map(|&n| vec![usize::MAX; n]).collect(),
        used: b.counts().iter().map(|&n| vec![false; n]).collect(),
        degree_a: cofacet_degrees(a),
        degree_b: cofacet_degrees(b),
    };
    state.extend(&order, 0)
}

fn cofacet_degrees(c: &DeltaComplex) -> Vec<Vec<usize>> {
    let counts = c.counts();
    let mut deg: Vec<Vec<usize>> = counts.iter().map(|&n| vec![0; n]).collect();
    for d in 1..counts.len() {
        for s in c.simplices(d) {
            for &f in &s.facets {
                deg[d - 1][f] += 1;
            }
        }
    }
    deg
}

struct Search<'c> {
    a: &'c DeltaComplex,
    b: &'c DeltaComplex,
    forward: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
    degree_a: Vec<Vec<usize>>,
    degree_b: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn extend(&mut self, order: &[(usize, usize)], k: usize) -> bool {
        let Some(&(d, i)) = order.get(k) else {
            return true;
        };
        for j in 0..self.b.count(d) {
            if self.used[d][j] || self.degree_a[d][i] != self.degree_b[d][j] {
                continue;
            }
            if d > 0 && !self.compatible(d, i, j) {
                continue;
            }
            self.forward[d][i] = j;
            self.used[d][j] = true;
            if self.extend(order, k + 1) {
                return true;
            }
            self.used[d][j] = false;
            self.forward[d][i] = usize::MAX;
        }
        false
    }

    fn compatible(&self, d: usize, i: usize, j: usize) -> bool {
        let s = self.a.simplex(d, i);
        let t = self.b.simplex(d, j);
        for (p, &v) in s.vertices.iter().enumerate() {
            let image = self.forward[0][v];
            let Some(q) = t.vertices.iter().position(|&w| w == image) else {
                return false;
            };
            if self.forward[d - 1][s.facets[p]] != t.facets[q] {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexBuilder;

    fn two_edges(ids: [&str; 4], swap: bool) -> DeltaComplex {
        let mut b = ComplexBuilder::new();
        let (u, v) = (b.vertex(ids[0]), b.vertex(ids[1]));
        if swap {
            b.edge(ids[3], u, v);
            b.edge(ids[2], u, v);
        } else {
            b.edge(ids[2], u, v);
            b.edge(ids[3], u, v);
        }
        b.build().unwrap()
    }

    #[test]
    fn relabelled_complexes_are_isomorphic() {
        let x = two_edges(["a", "b", "p", "q"], false);
        let y = two_edges(["C1", "C2", "x", "y"], true);
        assert!(is_isomorphic(&x, &y));
    }

    #[test]
    fn path_and_multiedge_differ() {
        let mut b = ComplexBuilder::new();
        let (u, v, w) = (b.vertex("u"), b.vertex("v"), b.vertex("w"));
        b.edge("uv", u, v);
        b.edge("vw", v, w);
        let path = b.build().unwrap();
        let mut b = ComplexBuilder::new();
        let (u, v, _w) = (b.vertex("u"), b.vertex("v"), b.vertex("w"));
        b.edge("p", u, v);
        b.edge("q", u, v);
        let multi = b.build().unwrap();
        assert!(!is_isomorphic(&path, &multi));
    }
}
