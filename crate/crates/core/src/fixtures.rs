//! Bundled example configurations, looked up by name.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::complex::{Component, FrobeniusSpec, SncConfiguration, Stratum};
use crate::error::{Error, Result};
use crate::linalg::{FgAbelianGroup, GaloisModule};
use crate::reciprocity::{EdgeLabelCochain, Experiment, Pi1Input};

#[derive(Clone, Debug, Default)]
pub struct FixtureParams {
    pub n: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub experiment: Experiment,
    /// Configuration upstairs, with its deck transformation recorded as the
    /// Frobenius action, when the example comes from a cover.
    pub cover: Option<SncConfiguration>,
    pub notes: Vec<String>,
}

pub trait FixtureGenerator: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn generate(&self, params: &FixtureParams) -> Result<Fixture>;
}

struct Rulings;
struct Fermat;

static GENERATORS: [&dyn FixtureGenerator; 2] = [&Rulings, &Fermat];

pub fn generators() -> &'static [&'static dyn FixtureGenerator] {
    &GENERATORS
}

pub fn generator(name: &str) -> Option<&'static dyn FixtureGenerator> {
    GENERATORS.iter().copied().find(|g| g.name() == name)
}

fn component(id: impl Into<String>) -> Component {
    Component {
        id: id.into(),
        point_degrees: vec![1],
    }
}

fn double_point(id: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Stratum {
    Stratum {
        id: id.into(),
        on: vec![a.into(), b.into()],
        facets: None,
        point_degrees: vec![1],
    }
}

impl FixtureGenerator for Rulings {
    fn name(&self) -> &'static str {
        "rulings"
    }

    fn describe(&self) -> &'static str {
        "four rulings (x^2-y^2)(z^2-w^2)=0 on P1 x P1; y0 = 0"
    }

    fn generate(&self, _: &FixtureParams) -> Result<Fixture> {
        let ids = ["x=y", "x=-y", "z=w", "z=-w"];
        let mut edges = Vec::new();
        for a in &ids[..2] {
            for b in &ids[2..] {
                edges.push(double_point(format!("{a},{b}"), *a, *b));
            }
        }
        let config = SncConfiguration {
            name: "rulings".into(),
            components: ids.iter().map(|i| component(*i)).collect(),
            strata: BTreeMap::from([(2, edges)]),
            frobenius: None,
        };
        Ok(Fixture {
            experiment: Experiment {
                config,
                pi1: Pi1Input::trivial(),
                labels: EdgeLabelCochain::zero(),
            },
            cover: None,
            notes: vec![],
        })
    }
}

impl FixtureGenerator for Fermat {
    fn name(&self) -> &'static str {
        "fermat"
    }

    fn describe(&self) -> &'static str {
        "quotient of 2n lines on the Fermat surface by the order-n automorphism tau"
    }

    fn generate(&self, params: &FixtureParams) -> Result<Fixture> {
        let n = params
            .n
            .ok_or_else(|| Error::InvalidArgument("fermat needs --n".into()))?;
        if n < 2 {
            return Err(Error::InvalidArgument(format!("fermat needs n > 1, got {n}")));
        }
        let config = SncConfiguration {
            name: format!("fermat-{n}"),
            components: vec![component("C1"), component("C2")],
            strata: BTreeMap::from([(
                2,
                vec![double_point("p", "C1", "C2"), double_point("q", "C1", "C2")],
            )]),
            frobenius: None,
        };
        let y0 = GaloisModule::trivial_action(FgAbelianGroup::cyclic(n));
        let labels = EdgeLabelCochain {
            labels: BTreeMap::from([
                ("p".to_string(), vec![BigInt::from(1)]),
                ("q".to_string(), vec![BigInt::from(0)]),
            ]),
        };
        let mut notes = vec!["assumes k contains a primitive n-th root of unity".to_string()];
        if num_integer::gcd(n, 6) != 1 {
            notes.push(format!("n = {n} is not prime to 6; the combinatorics are produced anyway"));
        }
        Ok(Fixture {
            experiment: Experiment {
                config,
                pi1: Pi1Input {
                    y0,
                    component_maps: vec![],
                },
                labels,
            },
            cover: Some(fermat_cover(n as usize)),
            notes,
        })
    }
}

/// Lines `L1_j, L2_j` with `x_j = L1_j ∩ L2_j` and `y_j = L2_j ∩ L1_{j+1}`;
/// `τ` shifts `j` by one.
pub fn fermat_cover(n: usize) -> SncConfiguration {
    let l1 = |j: usize| format!("L1_{}", j % n);
    let l2 = |j: usize| format!("L2_{}", j % n);
    let mut components = Vec::new();
    for j in 0..n {
        components.push(component(l1(j)));
        components.push(component(l2(j)));
    }
    let mut edges = Vec::new();
    let mut comp_action = BTreeMap::new();
    let mut edge_action = BTreeMap::new();
    for j in 0..n {
        edges.push(double_point(format!("x_{j}"), l1(j), l2(j)));
        edges.push(double_point(format!("y_{j}"), l2(j), l1(j + 1)));
        comp_action.insert(l1(j), l1(j + 1));
        comp_action.insert(l2(j), l2(j + 1));
        edge_action.insert(format!("x_{j}"), format!("x_{}", (j + 1) % n));
        edge_action.insert(format!("y_{j}"), format!("y_{}", (j + 1) % n));
    }
    SncConfiguration {
        name: format!("fermat-{n}-cover"),
        components,
        strata: BTreeMap::from([(2, edges)]),
        frobenius: Some(FrobeniusSpec {
            order: n as u64,
            components: comp_action,
            strata: BTreeMap::from([(2, edge_action)]),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_dual_complex, is_isomorphic, validate_config};
    use crate::galois::extension_complex;
    use crate::homology::{homology_group, Coefficients};

    #[test]
    fn registry_lookup() {
        assert_eq!(generators().len(), 2);
        assert!(generator("rulings").is_some());
        assert!(generator("nope").is_none());
    }

    #[test]
    fn rulings_is_a_four_cycle() {
        let fx = generator("rulings").unwrap().generate(&FixtureParams::default()).unwrap();
        fx.experiment.validate().unwrap();
        let c = build_dual_complex(&fx.experiment.config).unwrap();
        assert_eq!(c.counts(), vec![4, 4]);
        let h = homology_group(&c, 1, Coefficients::Integers).unwrap();
        assert_eq!(h.group.normal_form().free_rank, 1);
    }

    #[test]
    fn fermat_three() {
        let fx = generator("fermat").unwrap().generate(&FixtureParams { n: Some(3) }).unwrap();
        fx.experiment.validate().unwrap();
        let cover = fx.cover.unwrap();
        assert!(validate_config(&cover).is_ok());
        assert_eq!(build_dual_complex(&cover).unwrap().counts(), vec![6, 6]);
        assert_eq!(build_dual_complex(&fx.experiment.config).unwrap().counts(), vec![2, 2]);
    }

    #[test]
    fn fermat_rejects_small_n() {
        let g = generator("fermat").unwrap();
        assert!(g.generate(&FixtureParams { n: Some(1) }).is_err());
        assert!(g.generate(&FixtureParams::default()).is_err());
    }

    #[test]
    fn quotient_matches_extension_quotient() {
        for n in [2, 3, 5, 7] {
            let fx = generator("fermat").unwrap().generate(&FixtureParams { n: Some(n) }).unwrap();
            let quotient = extension_complex(fx.cover.as_ref().unwrap(), 1).unwrap();
            let d = build_dual_complex(&fx.experiment.config).unwrap();
            assert!(is_isomorphic(&quotient.level.complex, &d), "n = {n}");
        }
    }
}
