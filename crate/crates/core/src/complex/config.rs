//! Combinatorial description of a simple normal crossing configuration.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub id: String,
    /// Degrees over the base field of known closed points.
    #[serde(default)]
    pub point_degrees: Vec<u64>,
}

/// An irreducible component of a depth-`r` intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub id: String,
    pub on: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<String>>,
    #[serde(default)]
    pub point_degrees: Vec<u64>,
}

/// Frobenius permutation of components and strata. Unlisted ids are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrobeniusSpec {
    pub order: u64,
    #[serde(default)]
    pub components: BTreeMap<String, String>,
    #[serde(default)]
    pub strata: BTreeMap<usize, BTreeMap<String, String>>,
}

/// Components (in their fixed order), strata keyed by depth, and an
/// optional Frobenius action on the geometric configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SncConfiguration {
    pub name: String,
    pub components: Vec<Component>,
    #[serde(default)]
    pub strata: BTreeMap<usize, Vec<Stratum>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<FrobeniusSpec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(self.errors))
        }
    }
}

/// One dimension of the resolved configuration: level 0 holds the
/// components, level `k` the depth-`k+1` strata.
#[derive(Clone, Debug, Default)]
pub(crate) struct Level {
    pub ids: Vec<String>,
    /// Component positions, increasing.
    pub vertices: Vec<Vec<usize>>,
    /// Indices into the previous level, by omitted vertex position.
    pub facets: Vec<Vec<usize>>,
    pub point_degrees: Vec<Vec<u64>>,
    /// Frobenius permutation of this level.
    pub perm: Vec<usize>,
}

/// Index-based view of a configuration that passed validation.
#[derive(Clone, Debug)]
pub(crate) struct Resolved {
    pub levels: Vec<Level>,
    pub order: u64,
}

impl Resolved {
    /// Orbit label of each element of every level under the `f`-th power of
    /// Frobenius: the smallest index in the orbit. `f = 0` gives singletons.
    pub fn orbits(&self, f: u64) -> Vec<Vec<usize>> {
        self.levels
            .iter()
            .map(|level| {
                let n = level.perm.len();
                let step = power_perm(&level.perm, f);
                let mut label = vec![usize::MAX; n];
                for start in 0..n {
                    if label[start] != usize::MAX {
                        continue;
                    }
                    let mut x = start;
                    loop {
                        label[x] = start;
                        x = step[x];
                        if x == start {
                            break;
                        }
                    }
                }
                label
            })
            .collect()
    }
}

pub(crate) fn power_perm(perm: &[usize], f: u64) -> Vec<usize> {
    let r = f % perm_order(perm);
    let mut out: Vec<usize> = (0..perm.len()).collect();
    for _ in 0..r {
        out = out.iter().map(|&x| perm[x]).collect();
    }
    out
}

pub(crate) fn perm_order(perm: &[usize]) -> u64 {
    let mut seen = vec![false; perm.len()];
    let mut order = 1u64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

impl SncConfiguration {
    pub fn frobenius_order(&self) -> u64 {
        self.frobenius.as_ref().map_or(1, |f| f.order)
    }

    pub fn has_nontrivial_action(&self) -> bool {
        self.frobenius.as_ref().is_some_and(|f| {
            f.components.iter().any(|(a, b)| a != b)
                || f.strata.values().any(|m| m.iter().any(|(a, b)| a != b))
        })
    }

    /// Ids of the depth-2 strata, i.e. the edges of the dual complex.
    pub fn edge_ids(&self) -> Vec<&str> {
        self.strata
            .get(&2)
            .map(|l| l.iter().map(|s| s.id.as_str()).collect())
            .unwrap_or_default()
    }

    pub(crate) fn resolve(&self) -> Result<Resolved> {
        let (resolved, errors) = resolve(self);
        match resolved {
            Some(r) if errors.is_empty() => Ok(r),
            _ => Err(Error::InvalidConfig(errors)),
        }
    }
}

/// Checks every structural invariant and reports all violations found.
pub fn validate_config(cfg: &SncConfiguration) -> ValidationReport {
    ValidationReport {
        errors: resolve(cfg).1,
    }
}

fn resolve(cfg: &SncConfiguration) -> (Option<Resolved>, Vec<String>) {
    let mut errors = Vec::new();
    if cfg.components.is_empty() {
        errors.push("at least one component required".to_string());
        return (None, errors);
    }

    let mut all_ids = HashSet::new();
    let mut check_id = |id: &str, errors: &mut Vec<String>| {
        if id.is_empty() {
            errors.push("empty id".to_string());
        } else if !all_ids.insert(id.to_string()) {
            errors.push(format!("duplicate id '{id}'"));
        }
    };

    let mut comp_pos = HashMap::new();
    for (i, c) in cfg.components.iter().enumerate() {
        check_id(&c.id, &mut errors);
        comp_pos.entry(c.id.as_str()).or_insert(i);
        check_degrees(&c.id, &c.point_degrees, &mut errors);
    }

    let max_depth = cfg.strata.keys().copied().max().unwrap_or(1);
    for &depth in cfg.strata.keys() {
        if depth < 2 {
            errors.push(format!("strata depth {depth} is invalid; depths start at 2"));
        }
    }
    if !errors.is_empty() {
        return (None, errors);
    }

    let mut levels = vec![Level {
        ids: cfg.components.iter().map(|c| c.id.clone()).collect(),
        vertices: (0..cfg.components.len()).map(|i| vec![i]).collect(),
        facets: vec![vec![]; cfg.components.len()],
        point_degrees: cfg.components.iter().map(|c| c.point_degrees.clone()).collect(),
        perm: (0..cfg.components.len()).collect(),
    }];

    for depth in 2..=max_depth {
        let strata = cfg.strata.get(&depth).map(Vec::as_slice).unwrap_or(&[]);
        let prev = &levels[depth - 2];
        let mut level = Level::default();
        for s in strata {
            check_id(&s.id, &mut errors);
            check_degrees(&s.id, &s.point_degrees, &mut errors);
            if s.on.len() != depth {
                errors.push(format!(
                    "stratum '{}' of depth {depth} lies on {} components",
                    s.id,
                    s.on.len()
                ));
                continue;
            }
            let mut vertices = Vec::with_capacity(depth);
            let mut ok = true;
            for c in &s.on {
                match comp_pos.get(c.as_str()) {
                    Some(&p) => vertices.push(p),
                    None => {
                        errors.push(format!("stratum '{}' references unknown component '{c}'", s.id));
                        ok = false;
                    }
                }
            }
            if !ok {
                continue;
            }
            vertices.sort_unstable();
            if vertices.windows(2).any(|w| w[0] == w[1]) {
                errors.push(format!("stratum '{}' lies on a repeated component", s.id));
                continue;
            }
            let Some(facets) = resolve_facets(s, &vertices, prev, depth, &mut errors) else {
                continue;
            };
            level.ids.push(s.id.clone());
            level.vertices.push(vertices);
            level.facets.push(facets);
            level.point_degrees.push(s.point_degrees.clone());
        }
        level.perm = (0..level.ids.len()).collect();
        levels.push(level);
    }
    if !errors.is_empty() {
        return (None, errors);
    }

    let mut resolved = Resolved { levels, order: 1 };
    if let Some(frob) = &cfg.frobenius {
        check_frobenius(frob, &mut resolved, &mut errors);
    }
    if errors.is_empty() {
        (Some(resolved), errors)
    } else {
        (None, errors)
    }
}

fn check_degrees(id: &str, degrees: &[u64], errors: &mut Vec<String>) {
    if degrees.contains(&0) {
        errors.push(format!("'{id}' has a point degree of 0; degrees must be positive"));
    }
}

fn resolve_facets(
    s: &Stratum,
    vertices: &[usize],
    prev: &Level,
    depth: usize,
    errors: &mut Vec<String>,
) -> Option<Vec<usize>> {
    let omitting = |i: usize| {
        let mut v = vertices.to_vec();
        v.remove(i);
        v
    };
    if depth == 2 {
        if s.facets.is_some() {
            errors.push(format!(
                "stratum '{}' lists facets, but the faces of a double stratum are its components",
                s.id
            ));
            return None;
        }
        return Some(vec![vertices[1], vertices[0]]);
    }
    let mut facets = vec![usize::MAX; depth];
    match &s.facets {
        Some(explicit) => {
            if explicit.len() != depth {
                errors.push(format!(
                    "stratum '{}' lists {} facets, expected {depth}",
                    s.id,
                    explicit.len()
                ));
                return None;
            }
            for fid in explicit {
                let Some(fidx) = prev.ids.iter().position(|x| x == fid) else {
                    errors.push(format!(
                        "stratum '{}' lists facet '{fid}', which is not a stratum of depth {}",
                        s.id,
                        depth - 1
                    ));
                    return None;
                };
                let Some(i) = (0..depth).find(|&i| prev.vertices[fidx] == omitting(i)) else {
                    errors.push(format!(
                        "facet '{fid}' of stratum '{}' does not lie on a sub-intersection missing exactly one component",
                        s.id
                    ));
                    return None;
                };
                if facets[i] != usize::MAX {
                    errors.push(format!(
                        "stratum '{}' lists two facets omitting the same component",
                        s.id
                    ));
                    return None;
                }
                facets[i] = fidx;
            }
        }
        None => {
            for (i, slot) in facets.iter_mut().enumerate() {
                let want = omitting(i);
                let candidates: Vec<usize> = (0..prev.ids.len())
                    .filter(|&j| prev.vertices[j] == want)
                    .collect();
                match candidates.as_slice() {
                    [j] => *slot = *j,
                    [] => {
                        errors.push(format!(
                            "stratum '{}' has no depth-{} stratum on the components omitting position {i}",
                            s.id,
                            depth - 1
                        ));
                        return None;
                    }
                    _ => {
                        let names: Vec<&str> =
                            candidates.iter().map(|&j| prev.ids[j].as_str()).collect();
                        errors.push(format!(
                            "facet ambiguity for stratum '{}': candidates {} share the same components; list facets explicitly",
                            s.id,
                            names.join(", ")
                        ));
                        return None;
                    }
                }
            }
        }
    }
    Some(facets)
}

fn check_frobenius(frob: &FrobeniusSpec, resolved: &mut Resolved, errors: &mut Vec<String>) {
    if frob.order == 0 {
        errors.push("Frobenius order must be positive".to_string());
        return;
    }
    resolved.order = frob.order;
    let depth_count = resolved.levels.len();
    for &depth in frob.strata.keys() {
        if depth < 2 || depth > depth_count {
            errors.push(format!("Frobenius permutes strata of depth {depth}, which has no strata"));
        }
    }
    for (k, level) in resolved.levels.iter_mut().enumerate() {
        let what = if k == 0 { "components".to_string() } else { format!("depth-{} strata", k + 1) };
        let empty = BTreeMap::new();
        let map = if k == 0 {
            &frob.components
        } else {
            frob.strata.get(&(k + 1)).unwrap_or(&empty)
        };
        let mut perm: Vec<usize> = (0..level.ids.len()).collect();
        let mut bad = false;
        for (from, to) in map {
            let (Some(a), Some(b)) = (
                level.ids.iter().position(|x| x == from),
                level.ids.iter().position(|x| x == to),
            ) else {
                errors.push(format!("Frobenius on {what} maps '{from}' to '{to}', not both {what}"));
                bad = true;
                continue;
            };
            perm[a] = b;
        }
        let mut hit = vec![false; perm.len()];
        for &p in &perm {
            hit[p] = true;
        }
        if hit.iter().any(|h| !h) {
            errors.push(format!("Frobenius on {what} is not a permutation"));
            bad = true;
        }
        if bad {
            continue;
        }
        if !frob.order.is_multiple_of(perm_order(&perm)) {
            errors.push(format!(
                "Frobenius on {what} has order {}, which does not divide {}",
                perm_order(&perm),
                frob.order
            ));
        }
        level.perm = perm;
    }
    if !errors.is_empty() {
        return;
    }

    // Incidence: φ(s) must lie on φ(on(s)) and carry φ of each facet.
    let comp_perm = resolved.levels[0].perm.clone();
    for k in 1..resolved.levels.len() {
        let (lower, upper) = resolved.levels.split_at(k);
        let prev = &lower[k - 1];
        let level = &upper[0];
        for s in 0..level.ids.len() {
            let t = level.perm[s];
            let mut image: Vec<usize> = level.vertices[s].iter().map(|&c| comp_perm[c]).collect();
            image.sort_unstable();
            if image != level.vertices[t] {
                errors.push(format!(
                    "Frobenius maps stratum '{}' to '{}' but does not respect incidence",
                    level.ids[s], level.ids[t]
                ));
                continue;
            }
            if k >= 2 {
                for (i, &c) in level.vertices[s].iter().enumerate() {
                    let j = level.vertices[t].iter().position(|&x| x == comp_perm[c]).unwrap();
                    if prev.perm[level.facets[s][i]] != level.facets[t][j] {
                        errors.push(format!(
                            "Frobenius maps stratum '{}' to '{}' but does not respect its facets",
                            level.ids[s], level.ids[t]
                        ));
                        break;
                    }
                }
            }
        }
    }
    if !errors.is_empty() {
        return;
    }

    // Over the base field the components of each stratum must stay distinct.
    let orbits = resolved.orbits(1);
    for level in &resolved.levels[1..] {
        for (s, vertices) in level.vertices.iter().enumerate() {
            if let Some(msg) = collapse(vertices, &orbits[0], &resolved.levels[0].ids) {
                errors.push(format!(
                    "not SNC after extension: stratum '{}' {msg}",
                    level.ids[s]
                ));
            }
        }
    }
}

/// Describes two vertices sharing an orbit, if any.
pub(crate) fn collapse(vertices: &[usize], orbit_of: &[usize], ids: &[String]) -> Option<String> {
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if orbit_of[vertices[i]] == orbit_of[vertices[j]] {
                return Some(format!(
                    "has components '{}' and '{}' in one Frobenius orbit",
                    ids[vertices[i]], ids[vertices[j]]
                ));
            }
        }
    }
    None
}
