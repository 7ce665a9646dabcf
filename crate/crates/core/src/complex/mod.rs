//! Dual Δ-complexes of SNC configurations and the suspension construction.

mod config;
mod delta;
mod iso;

pub use config::{
    validate_config, Component, FrobeniusSpec, SncConfiguration, Stratum, ValidationReport,
};
pub(crate) use config::{collapse, power_perm, Resolved};
pub use delta::{ChainMap, ComplexBuilder, DeltaComplex, Simplex};
pub(crate) use delta::sorting_sign;
pub use iso::is_isomorphic;

use crate::error::{Error, Result};

/// The dual complex: one vertex per component, one `(r-1)`-simplex per
/// depth-`r` stratum, vertices ordered by the component list.
pub fn build_dual_complex(cfg: &SncConfiguration) -> Result<DeltaComplex> {
    let resolved = cfg.resolve()?;
    Ok(complex_from_resolved(&resolved))
}

pub(crate) fn complex_from_resolved(resolved: &Resolved) -> DeltaComplex {
    let dims = resolved
        .levels
        .iter()
        .map(|level| {
            (0..level.ids.len())
                .map(|i| Simplex {
                    id: level.ids[i].clone(),
                    vertices: level.vertices[i].clone(),
                    facets: level.facets[i].clone(),
                })
                .collect()
        })
        .collect();
    DeltaComplex::new(dims).expect("resolved configurations produce valid complexes")
}

/// Suspension `SΓ`: `Γ` plus the cones over `Γ` from two apexes that are
/// never joined to each other. Apexes come last in the vertex order.
///
/// In dimension `a` the simplices are laid out as: the simplices of `Γ`,
/// then `σ * apex₀` for each `(a-1)`-simplex `σ`, then `σ * apex∞`.
pub fn suspend(complex: &DeltaComplex, apex0: &str, apex_inf: &str) -> Result<DeltaComplex> {
    if complex.is_empty() {
        return Err(Error::InvalidComplex("cannot suspend the empty complex".into()));
    }
    if apex0 == apex_inf {
        return Err(Error::InvalidComplex(format!("apex ids coincide: '{apex0}'")));
    }
    for a in 0..complex.counts().len() {
        for s in complex.simplices(a) {
            if s.id == apex0 || s.id == apex_inf {
                return Err(Error::InvalidComplex(format!("apex id collision: '{}'", s.id)));
            }
        }
    }
    let n = complex.count(0);
    let top = complex.counts().len();
    let mut dims: Vec<Vec<Simplex>> = Vec::with_capacity(top + 1);

    // Index of the cone over simplex `idx` of dimension `a - 1`, in dimension `a`.
    let cone_index = |a: usize, idx: usize, apex: usize| -> usize {
        if a == 0 {
            n + apex
        } else {
            complex.count(a) + apex * complex.count(a - 1) + idx
        }
    };

    for a in 0..=top {
        let mut list: Vec<Simplex> = complex.simplices(a).to_vec();
        if a == 0 {
            for id in [apex0, apex_inf] {
                let idx = list.len();
                list.push(Simplex {
                    id: id.to_string(),
                    vertices: vec![idx],
                    facets: vec![],
                });
            }
        } else {
            for (apex, apex_id) in [apex0, apex_inf].into_iter().enumerate() {
                for (idx, base) in complex.simplices(a - 1).iter().enumerate() {
                    let mut vertices = base.vertices.clone();
                    vertices.push(n + apex);
                    let mut facets: Vec<usize> = if a == 1 {
                        vec![n + apex]
                    } else {
                        base.facets.iter().map(|&f| cone_index(a - 1, f, apex)).collect()
                    };
                    facets.push(idx);
                    list.push(Simplex {
                        id: format!("{}*{}", base.id, apex_id),
                        vertices,
                        facets,
                    });
                }
            }
        }
        dims.push(list);
    }
    DeltaComplex::new(dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(id: &str) -> Component {
        Component {
            id: id.into(),
            point_degrees: vec![1],
        }
    }

    fn stratum(id: &str, on: &[&str]) -> Stratum {
        Stratum {
            id: id.into(),
            on: on.iter().map(|s| s.to_string()).collect(),
            facets: None,
            point_degrees: vec![1],
        }
    }

    fn cycle(n: usize) -> DeltaComplex {
        let mut b = ComplexBuilder::new();
        let vs: Vec<usize> = (0..n).map(|i| b.vertex(format!("v{i}"))).collect();
        for i in 0..n - 1 {
            b.edge(format!("e{i}"), vs[i], vs[i + 1]);
        }
        b.edge(format!("e{}", n - 1), vs[0], vs[n - 1]);
        b.build().unwrap()
    }

    #[test]
    fn single_component_gives_a_point() {
        let cfg = SncConfiguration {
            name: "pt".into(),
            components: vec![comp("C")],
            strata: Default::default(),
            frobenius: None,
        };
        let c = build_dual_complex(&cfg).unwrap();
        assert_eq!(c.counts(), vec![1]);
    }

    #[test]
    fn stratum_vertices_follow_component_order() {
        let cfg = SncConfiguration {
            name: "t".into(),
            components: vec![comp("B"), comp("A")],
            strata: [(2, vec![stratum("p", &["A", "B"])])].into(),
            frobenius: None,
        };
        let c = build_dual_complex(&cfg).unwrap();
        assert_eq!(c.simplex(1, 0).vertices, vec![0, 1]);
    }

    #[test]
    fn invalid_config_propagates() {
        let cfg = SncConfiguration {
            name: "t".into(),
            components: vec![comp("A")],
            strata: [(2, vec![stratum("p", &["A", "A"])])].into(),
            frobenius: None,
        };
        assert!(matches!(build_dual_complex(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn suspension_counts() {
        let mut b = ComplexBuilder::new();
        b.vertex("x");
        let point = b.build().unwrap();
        assert_eq!(suspend(&point, "o", "inf").unwrap().counts(), vec![3, 2]);

        let s = suspend(&cycle(4), "o", "inf").unwrap();
        assert_eq!(s.counts(), vec![6, 12, 8]);
        assert_eq!(s.euler_characteristic(), 2);
        assert!(s.boundary_matrix(1).mul(&s.boundary_matrix(2)).is_zero());

        let mut b = ComplexBuilder::new();
        let (u, v) = (b.vertex("C1"), b.vertex("C2"));
        b.edge("p", u, v);
        b.edge("q", u, v);
        let multi = b.build().unwrap();
        assert_eq!(suspend(&multi, "o", "inf").unwrap().counts(), vec![4, 6, 4]);
    }

    #[test]
    fn apex_collision_rejected() {
        assert!(suspend(&cycle(3), "v0", "inf").is_err());
        assert!(suspend(&cycle(3), "o", "o").is_err());
        assert!(suspend(&DeltaComplex::default(), "o", "inf").is_err());
    }
}
