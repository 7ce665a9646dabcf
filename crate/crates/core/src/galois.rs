//! Scalar extension of a configuration with Frobenius action.
//!
//! A configuration describes the geometric object `X̄` together with the
//! Frobenius permutation of its components and strata. Over the degree-`f`
//! extension `F_f` the components and strata are the orbits of `φ^f`, so
//! every level is an orbit quotient of `Γ_X̄`. Level `0` stands for `X̄`
//! itself (`φ^0 = id`), which makes "`f` divides `f'`" cover the tower
//! `k ⊂ F ⊂ E ⊂ k̄` uniformly.
//!
//! Vertex order on a level `f ≥ 1` refines the semi-order inherited from
//! the base: orbits are sorted by (position of the base component they lie
//! over, position of their first member). Level `0` keeps the list order.

use crate::complex::{
    build_dual_complex, collapse, complex_from_resolved, power_perm, sorting_sign, ChainMap,
    DeltaComplex, Resolved, Simplex, SncConfiguration,
};
use crate::error::{Error, Result};
use crate::homology::{homology_group, induced_map_between, Coefficients};
use crate::linalg::{GaloisModule, ModuleMap, Subgroup};

/// The dual complex over `F_f` and the bookkeeping that relates it to `Γ_X̄`.
#[derive(Clone, Debug)]
pub struct LevelComplex {
    pub f: u64,
    pub complex: DeltaComplex,
    /// For each dimension, the level simplex containing each geometric simplex.
    pub class_of: Vec<Vec<usize>>,
    /// For each dimension and level simplex, its geometric members in list order.
    pub members: Vec<Vec<Vec<usize>>>,
}

impl LevelComplex {
    pub fn build(cfg: &SncConfiguration, f: u64) -> Result<Self> {
        let resolved = cfg.resolve()?;
        level_from_resolved(&resolved, f)
    }

    /// Member ids of each orbit, per dimension.
    pub fn orbit_ids(&self, cfg: &SncConfiguration) -> Result<Vec<Vec<Vec<String>>>> {
        let geometric = build_dual_complex(cfg)?;
        Ok(self
            .members
            .iter()
            .enumerate()
            .map(|(a, list)| {
                list.iter()
                    .map(|m| m.iter().map(|&i| geometric.simplex(a, i).id.clone()).collect())
                    .collect()
            })
            .collect())
    }
}

fn level_from_resolved(resolved: &Resolved, f: u64) -> Result<LevelComplex> {
    if f == 0 {
        let complex = complex_from_resolved(resolved);
        let class_of: Vec<Vec<usize>> =
            complex.counts().iter().map(|&n| (0..n).collect()).collect();
        let members = class_of
            .iter()
            .map(|l| l.iter().map(|&i| vec![i]).collect())
            .collect();
        return Ok(LevelComplex {
            f,
            complex,
            class_of,
            members,
        });
    }

    let labels = resolved.orbits(f);
    let base = resolved.orbits(1);
    let comp_ids = &resolved.levels[0].ids;

    // Vertices: orbit representatives sorted by (base orbit, representative).
    let mut reps: Vec<usize> = (0..comp_ids.len()).filter(|&c| labels[0][c] == c).collect();
    reps.sort_by_key(|&r| (base[0][r], r));
    let mut vertex_of_rep = vec![usize::MAX; comp_ids.len()];
    for (v, &r) in reps.iter().enumerate() {
        vertex_of_rep[r] = v;
    }
    let vertex_of: Vec<usize> = (0..comp_ids.len()).map(|c| vertex_of_rep[labels[0][c]]).collect();

    let mut dims: Vec<Vec<Simplex>> = Vec::new();
    let mut class_of: Vec<Vec<usize>> = Vec::new();
    let mut members: Vec<Vec<Vec<usize>>> = Vec::new();

    dims.push(
        reps.iter()
            .enumerate()
            .map(|(v, &r)| Simplex {
                id: comp_ids[r].clone(),
                vertices: vec![v],
                facets: vec![],
            })
            .collect(),
    );
    class_of.push(vertex_of.clone());
    let mut comp_members = vec![Vec::new(); reps.len()];
    for c in 0..comp_ids.len() {
        comp_members[vertex_of[c]].push(c);
    }
    members.push(comp_members);

    for k in 1..resolved.levels.len() {
        let level = &resolved.levels[k];
        let n = level.ids.len();
        let mut index_of_rep = vec![usize::MAX; n];
        let mut list = Vec::new();
        let mut level_members: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if labels[k][s] != s {
                continue;
            }
            if let Some(msg) = collapse(&level.vertices[s], &labels[0], comp_ids) {
                return Err(Error::NotSncAfterExtension(format!(
                    "over the degree-{f} extension, stratum '{}' {msg}",
                    level.ids[s]
                )));
            }
            let mut images: Vec<(usize, usize)> = level.vertices[s]
                .iter()
                .enumerate()
                .map(|(i, &c)| (vertex_of[c], i))
                .collect();
            images.sort_unstable();
            let facets = images
                .iter()
                .map(|&(_, i)| class_of[k - 1][level.facets[s][i]])
                .collect();
            index_of_rep[s] = list.len();
            list.push(Simplex {
                id: level.ids[s].clone(),
                vertices: images.iter().map(|&(v, _)| v).collect(),
                facets,
            });
            level_members.push(Vec::new());
        }
        let cls: Vec<usize> = (0..n).map(|s| index_of_rep[labels[k][s]]).collect();
        for (s, &c) in cls.iter().enumerate() {
            level_members[c].push(s);
        }
        dims.push(list);
        class_of.push(cls);
        members.push(level_members);
    }

    Ok(LevelComplex {
        f,
        complex: DeltaComplex::new(dims)?,
        class_of,
        members,
    })
}

/// The orbit map from level `from` to level `to`; `to` must divide `from`
/// (level 0 is divisible by everything).
fn orbit_map(source: &LevelComplex, target: &LevelComplex) -> Result<ChainMap> {
    let divides = if target.f == 0 {
        source.f == 0
    } else {
        source.f.is_multiple_of(target.f)
    };
    if !divides {
        return Err(Error::InvalidArgument(format!(
            "no map from level {} to level {}: {} does not divide {}",
            source.f, target.f, target.f, source.f
        )));
    }
    // Each source vertex goes to the target vertex of any of its members.
    let vertex_map: Vec<usize> = source.members[0]
        .iter()
        .map(|m| target.class_of[0][m[0]])
        .collect();
    let mut images = Vec::new();
    for (a, list) in source.members.iter().enumerate() {
        let img = list
            .iter()
            .enumerate()
            .map(|(idx, m)| {
                let t = target.class_of[a][m[0]];
                let seq: Vec<usize> = source
                    .complex
                    .simplex(a, idx)
                    .vertices
                    .iter()
                    .map(|&v| vertex_map[v])
                    .collect();
                (t, sorting_sign(&seq))
            })
            .collect();
        images.push(img);
    }
    ChainMap::new(source.complex.clone(), target.complex.clone(), images)
}

/// `Γ` over the degree-`f` extension and `σ: Γ_X̄ → Γ_{X⊗F_f}`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub level: LevelComplex,
    pub sigma: ChainMap,
}

pub fn extension_complex(cfg: &SncConfiguration, f: u64) -> Result<Extension> {
    if f == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    let resolved = cfg.resolve()?;
    let geometric = level_from_resolved(&resolved, 0)?;
    let level = level_from_resolved(&resolved, f)?;
    let sigma = orbit_map(&geometric, &level)?;
    Ok(Extension { level, sigma })
}

/// `σ_{E/F}: Γ_{X⊗E} → Γ_{X⊗F}` for `[E:k] = from`, `[F:k] = to`, `to | from`.
/// Degree `0` denotes the geometric complex.
pub fn tower_map(cfg: &SncConfiguration, from: u64, to: u64) -> Result<ChainMap> {
    let resolved = cfg.resolve()?;
    let source = level_from_resolved(&resolved, from)?;
    let target = level_from_resolved(&resolved, to)?;
    orbit_map(&source, &target)
}

#[derive(Clone, Debug)]
pub struct NormMap {
    pub map: ModuleMap,
    pub image: Subgroup,
}

impl NormMap {
    pub fn is_surjective(&self) -> bool {
        self.map.is_surjective()
    }
}

/// The norm map `H_a(Γ_X̄) → H_a(Γ_{X⊗F_f})` and its image.
pub fn norm_map(cfg: &SncConfiguration, f: u64, a: usize, coeff: Coefficients) -> Result<NormMap> {
    let ext = extension_complex(cfg, f)?;
    let src = homology_group(ext.sigma.source(), a, coeff)?;
    let tgt = homology_group(ext.sigma.target(), a, coeff)?;
    let map = induced_map_between(&ext.sigma, &src, &tgt)?;
    let image = map.image();
    Ok(NormMap { map, image })
}

/// Frobenius as a chain automorphism of `Γ_X̄`.
pub fn frobenius_chain_map(cfg: &SncConfiguration) -> Result<ChainMap> {
    let resolved = cfg.resolve()?;
    let complex = complex_from_resolved(&resolved);
    let comp_perm = &resolved.levels[0].perm;
    let images = resolved
        .levels
        .iter()
        .enumerate()
        .map(|(k, level)| {
            (0..level.ids.len())
                .map(|s| {
                    let seq: Vec<usize> = level.vertices[s].iter().map(|&c| comp_perm[c]).collect();
                    let sign = if k == 0 { 1 } else { sorting_sign(&seq) };
                    (level.perm[s], sign)
                })
                .collect()
        })
        .collect();
    ChainMap::new(complex.clone(), complex, images)
}

/// `H_a(Γ_X̄; C)` with the automorphism induced by Frobenius.
pub fn frobenius_on_homology(cfg: &SncConfiguration, a: usize, coeff: Coefficients) -> Result<GaloisModule> {
    let phi = frobenius_chain_map(cfg)?;
    let h = homology_group(phi.source(), a, coeff)?;
    let map = induced_map_between(&phi, &h, &h)?;
    GaloisModule::new(h.group.clone(), map.matrix().clone(), cfg.frobenius_order())
}

/// Frobenius permutation of the geometric simplices in dimension `a`, with
/// the orientation sign of each image.
pub fn frobenius_on_simplices(cfg: &SncConfiguration, a: usize) -> Result<Vec<(usize, i8)>> {
    let phi = frobenius_chain_map(cfg)?;
    Ok((0..phi.source().count(a)).map(|i| phi.image(a, i)).collect())
}

/// Whether a stratum or component with closed points of the given degrees
/// acquires a rational point over the degree-`f` extension.
pub fn has_rational_point(point_degrees: &[u64], f: u64) -> bool {
    point_degrees.iter().any(|&d| d > 0 && f.is_multiple_of(d))
}

/// Number of cycles of the `f`-th power of a permutation.
pub fn count_cycles(perm: &[usize], f: u64) -> usize {
    let step = power_perm(perm, f);
    let mut seen = vec![false; step.len()];
    let mut cycles = 0;
    for s in 0..step.len() {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = step[x];
        }
    }
    cycles
}

/// The Frobenius permutation of the components, as positions.
pub fn component_permutation(cfg: &SncConfiguration) -> Result<Vec<usize>> {
    Ok(cfg.resolve()?.levels[0].perm.clone())
}
