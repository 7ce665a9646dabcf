//! The JSON experiment document: configuration, fundamental group data and edge labels.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::{validate_config, Component, FrobeniusSpec, SncConfiguration, Stratum};
use crate::error::{Error, Result};
use crate::linalg::{json_int, FgAbelianGroup, GaloisModule, IntMatrix};
use crate::reciprocity::{ComponentMap, EdgeLabelCochain, Experiment, Pi1Input};

/// A group presentation; relations and matrices are lists of columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub generators: usize,
    /// Each relation as a vector over the generators.
    #[serde(default, with = "json_int::vecvec")]
    pub relations: Vec<Vec<BigInt>>,
    /// Images of the generators under Frobenius; identity when absent.
    #[serde(default, with = "json_int::option_vecvec", skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<Vec<Vec<BigInt>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentMapSpec {
    pub component: String,
    pub generators: usize,
    #[serde(default, with = "json_int::vecvec")]
    pub relations: Vec<Vec<BigInt>>,
    /// Images of the generators in the `pi1_y0` group.
    #[serde(with = "json_int::vecvec")]
    pub images: Vec<Vec<BigInt>>,
    /// Images of the generators in the group of the Frobenius image component.
    #[serde(default, with = "json_int::option_vecvec", skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<Vec<Vec<BigInt>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub name: String,
    pub components: Vec<Component>,
    #[serde(default)]
    pub strata: BTreeMap<usize, Vec<Stratum>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<FrobeniusSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi1_y0: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub component_maps: Vec<ComponentMapSpec>,
    #[serde(default, with = "json_int::map_vec", skip_serializing_if = "BTreeMap::is_empty")]
    pub edge_labels: BTreeMap<String, Vec<BigInt>>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn config(&self) -> SncConfiguration {
        SncConfiguration {
            name: self.name.clone(),
            components: self.components.clone(),
            strata: self.strata.clone(),
            frobenius: self.frobenius.clone(),
        }
    }

    /// Builds and validates everything; configuration errors are reported together.
    pub fn into_experiment(self) -> Result<Experiment> {
        let config = self.config();
        validate_config(&config).into_result()?;

        let y0 = match &self.pi1_y0 {
            None => GaloisModule::trivial_action(FgAbelianGroup::trivial()),
            Some(spec) => {
                let group = presentation("pi1_y0", spec.generators, &spec.relations)?;
                let frob = match &spec.frobenius {
                    Some(cols) => columns("pi1_y0.frobenius", spec.generators, spec.generators, cols)?,
                    None => IntMatrix::identity(spec.generators),
                };
                GaloisModule::new(group, frob, config.frobenius_order())
                    .map_err(|e| Error::InvalidAction(format!("pi1_y0: {e}")))?
            }
        };
        let width = y0.group().generator_count();
        let mut component_maps = Vec::new();
        for (i, cm) in self.component_maps.iter().enumerate() {
            let at = format!("component_maps[{i}] ('{}')", cm.component);
            let group = presentation(&at, cm.generators, &cm.relations)?;
            let map = columns(&format!("{at}.images"), width, cm.generators, &cm.images)?;
            let frobenius = match &cm.frobenius {
                None => None,
                Some(cols) => {
                    let rows = cols.first().map_or(0, Vec::len);
                    Some(columns(&format!("{at}.frobenius"), rows, cm.generators, cols)?)
                }
            };
            component_maps.push(ComponentMap {
                component: cm.component.clone(),
                group,
                map,
                frobenius,
            });
        }
        let experiment = Experiment {
            config,
            pi1: Pi1Input { y0, component_maps },
            labels: EdgeLabelCochain {
                labels: self.edge_labels,
            },
        };
        experiment.validate()?;
        Ok(experiment)
    }

    pub fn from_experiment(exp: &Experiment) -> Self {
        let cfg = &exp.config;
        let y0 = exp.pi1.y0.group();
        let pi1_y0 = (y0.generator_count() > 0).then(|| GroupSpec {
            generators: y0.generator_count(),
            relations: y0.relations().columns(),
            frobenius: (!exp.pi1.y0.frobenius().eq(&IntMatrix::identity(y0.generator_count())))
                .then(|| exp.pi1.y0.frobenius().columns()),
        });
        Document {
            name: cfg.name.clone(),
            components: cfg.components.clone(),
            strata: cfg.strata.clone(),
            frobenius: cfg.frobenius.clone(),
            pi1_y0,
            component_maps: exp
                .pi1
                .component_maps
                .iter()
                .map(|cm| ComponentMapSpec {
                    component: cm.component.clone(),
                    generators: cm.group.generator_count(),
                    relations: cm.group.relations().columns(),
                    images: cm.map.columns(),
                    frobenius: cm.frobenius.as_ref().map(IntMatrix::columns),
                })
                .collect(),
            edge_labels: exp.labels.labels.clone(),
        }
    }
}

fn presentation(at: &str, generators: usize, relations: &[Vec<BigInt>]) -> Result<FgAbelianGroup> {
    let m = columns(&format!("{at}.relations"), generators, relations.len(), relations)?;
    Ok(FgAbelianGroup::new(generators, m))
}

fn columns(at: &str, rows: usize, count: usize, cols: &[Vec<BigInt>]) -> Result<IntMatrix> {
    if cols.len() != count {
        return Err(Error::ShapeMismatch(format!("{at}: expected {count} columns, got {}", cols.len())));
    }
    for (j, c) in cols.iter().enumerate() {
        if c.len() != rows {
            return Err(Error::ShapeMismatch(format!(
                "{at}[{j}]: expected {rows} entries, got {}",
                c.len()
            )));
        }
    }
    Ok(IntMatrix::from_columns(rows, cols))
}

/// Parses and validates a document in one step.
pub fn parse_experiment(text: &str) -> Result<Experiment> {
    Document::parse(text)?.into_experiment()
}
