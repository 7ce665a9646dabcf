//! Θ_ℓ, the map α^(ℓ) and the kernel prediction.
//!
//! Inputs are the configuration of `D`, the abelian fundamental group data of
//! `Ȳ₀` and the components of `D̄` (as finitely generated groups with
//! Frobenius), and an edge-label cochain on `Γ_D̄` valued in the `Ȳ₀` group.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::{build_dual_complex, DeltaComplex, SncConfiguration};
use crate::error::{Error, Result};
use crate::galois::{frobenius_on_simplices, has_rational_point, norm_map};
use crate::homology::{homology_group, Coefficients};
use crate::linalg::{
    prime_to_ell_torsion, torsion_and_primary, FgAbelianGroup, GaloisModule, IntMatrix, ModuleMap,
    NormalForm, Subgroup,
};

/// Abelian fundamental group of one component `D̄_j` and its map into the `Ȳ₀` group.
#[derive(Clone, Debug)]
pub struct ComponentMap {
    pub component: String,
    pub group: FgAbelianGroup,
    /// Images of the generators of `group` in the `Ȳ₀` group, as columns.
    pub map: IntMatrix,
    /// Frobenius `π₁(D̄_j) → π₁(D̄_{φ(j)})`; identity when absent.
    pub frobenius: Option<IntMatrix>,
}

#[derive(Clone, Debug)]
pub struct Pi1Input {
    pub y0: GaloisModule,
    pub component_maps: Vec<ComponentMap>,
}

impl Pi1Input {
    /// `y0 = 0`, no component data.
    pub fn trivial() -> Self {
        Pi1Input {
            y0: GaloisModule::trivial_action(FgAbelianGroup::trivial()),
            component_maps: Vec::new(),
        }
    }

    pub fn validate(&self, cfg: &SncConfiguration) -> Result<()> {
        let known: Vec<&str> = cfg.components.iter().map(|c| c.id.as_str()).collect();
        let mut seen = BTreeMap::new();
        for (i, cm) in self.component_maps.iter().enumerate() {
            if !known.contains(&cm.component.as_str()) {
                return Err(Error::InvalidConfig(vec![format!(
                    "component map for unknown component '{}'",
                    cm.component
                )]));
            }
            if seen.insert(cm.component.as_str(), i).is_some() {
                return Err(Error::InvalidConfig(vec![format!(
                    "duplicate component map for '{}'",
                    cm.component
                )]));
            }
            ModuleMap::new(cm.group.clone(), self.y0.group().clone(), cm.map.clone()).map_err(|e| {
                Error::IllDefinedMap(format!("component map '{}': {e}", cm.component))
            })?;
        }

        let trivial = FgAbelianGroup::trivial();
        let zero_map = IntMatrix::zeros(self.y0.group().generator_count(), 0);
        let lookup = |id: &str| -> (&FgAbelianGroup, &IntMatrix) {
            match seen.get(id) {
                Some(&i) => (&self.component_maps[i].group, &self.component_maps[i].map),
                None => (&trivial, &zero_map),
            }
        };
        let phi_y0 = self.y0.frobenius();
        for cm in &self.component_maps {
            let image_id = cfg
                .frobenius
                .as_ref()
                .and_then(|f| f.components.get(&cm.component))
                .map_or(cm.component.as_str(), String::as_str);
            let (image_group, image_map) = lookup(image_id);
            let frob = match &cm.frobenius {
                Some(m) => m.clone(),
                None if image_group.generator_count() == cm.group.generator_count() => {
                    IntMatrix::identity(cm.group.generator_count())
                }
                None => {
                    return Err(Error::LabelEquivariance(format!(
                        "component map '{}' needs an explicit frobenius matrix into '{image_id}'",
                        cm.component
                    )))
                }
            };
            ModuleMap::new(cm.group.clone(), image_group.clone(), frob.clone()).map_err(|e| {
                Error::LabelEquivariance(format!(
                    "frobenius of component '{}' is not a map into '{image_id}': {e}",
                    cm.component
                ))
            })?;
            let lhs = image_map.mul(&frob);
            let rhs = phi_y0.mul(&cm.map);
            for (a, b) in lhs.columns().iter().zip(rhs.columns()) {
                if !self.y0.group().elements_equal(a, &b) {
                    return Err(Error::LabelEquivariance(format!(
                        "component map '{}' does not commute with Frobenius",
                        cm.component
                    )));
                }
            }
        }
        Ok(())
    }

    /// `⊕_j π₁(D̄_j) → π₁(Ȳ₀)`, components in configuration order.
    fn sum_matrix(&self, cfg: &SncConfiguration) -> IntMatrix {
        let n = self.y0.group().generator_count();
        let mut columns = Vec::new();
        for c in &cfg.components {
            if let Some(cm) = self.component_maps.iter().find(|m| m.component == c.id) {
                columns.extend(cm.map.columns());
            }
        }
        IntMatrix::from_columns(n, &columns)
    }
}

/// Labels on the edges of `Γ_D̄`, each a coefficient vector over the `Ȳ₀` generators.
/// Missing edges carry the zero label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeLabelCochain {
    pub labels: BTreeMap<String, Vec<BigInt>>,
}

impl EdgeLabelCochain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn label(&self, edge: &str, width: usize) -> Vec<BigInt> {
        self.labels
            .get(edge)
            .cloned()
            .unwrap_or_else(|| vec![BigInt::zero(); width])
    }

    fn vectors(&self, complex: &DeltaComplex, width: usize) -> Vec<Vec<BigInt>> {
        complex
            .simplices(1)
            .iter()
            .map(|e| self.label(&e.id, width))
            .collect()
    }
}

/// Θ over ℤ and its ℓ-localization.
#[derive(Clone, Debug)]
pub struct Theta {
    /// `coker(⊕ component maps)` with the induced Frobenius.
    pub full: GaloisModule,
    /// `Θ_ℓ`: `full` modulo its prime-to-ℓ torsion.
    pub local: GaloisModule,
    /// `(Θ_ℓ)_tors` inside `local`.
    pub torsion: Subgroup,
}

pub fn compute_theta(cfg: &SncConfiguration, pi1: &Pi1Input, ell: u64) -> Result<Theta> {
    pi1.validate(cfg)?;
    let full = theta_full(cfg, pi1)?;
    localize(full, ell)
}

fn theta_full(cfg: &SncConfiguration, pi1: &Pi1Input) -> Result<GaloisModule> {
    pi1.y0.quotient_by(&pi1.sum_matrix(cfg))
}

fn localize(full: GaloisModule, ell: u64) -> Result<Theta> {
    let prime_to = prime_to_ell_torsion(full.group(), ell)?;
    let local = full.quotient_by(&prime_to.generators)?;
    let (torsion, _) = torsion_and_primary(local.group(), ell)?;
    Ok(Theta {
        full,
        local,
        torsion,
    })
}

fn validate_labels(
    cfg: &SncConfiguration,
    complex: &DeltaComplex,
    labels: &EdgeLabelCochain,
    pi1: &Pi1Input,
    theta: &GaloisModule,
) -> Result<()> {
    let width = pi1.y0.group().generator_count();
    for (edge, v) in &labels.labels {
        if complex.find(1, edge).is_none() {
            return Err(Error::InvalidLabel(format!("label for unknown edge '{edge}'")));
        }
        if v.len() != width {
            return Err(Error::InvalidLabel(format!(
                "edge '{edge}': label has {} entries, expected {width}",
                v.len()
            )));
        }
    }
    let vectors = labels.vectors(complex, width);
    let group = theta.group();

    let action = frobenius_on_simplices(cfg, 1)?;
    for (i, &(j, sign)) in action.iter().enumerate() {
        let lhs: Vec<BigInt> = vectors[j].iter().map(|x| x * sign).collect();
        let rhs = pi1.y0.frobenius().mul_vec(&vectors[i]);
        if !group.elements_equal(&lhs, &rhs) {
            return Err(Error::LabelEquivariance(format!(
                "label of edge '{}' is not carried by Frobenius to the label of '{}'",
                complex.simplex(1, i).id,
                complex.simplex(1, j).id
            )));
        }
    }

    for t in complex.simplices(2) {
        let mut sum = vec![BigInt::zero(); width];
        for (pos, &e) in t.facets.iter().enumerate() {
            for (s, x) in sum.iter_mut().zip(&vectors[e]) {
                if pos % 2 == 0 {
                    *s += x;
                } else {
                    *s -= x;
                }
            }
        }
        if !group.is_zero(&sum) {
            return Err(Error::CocycleViolation(format!(
                "boundary of 2-simplex '{}' has nonzero label sum",
                t.id
            )));
        }
    }
    Ok(())
}

/// `α^(ℓ): H₁(Γ_D̄, ℤ) → Θ_ℓ` on the homology generators.
#[derive(Clone, Debug)]
pub struct Alpha {
    pub map: ModuleMap,
    /// Image in `Θ_ℓ`.
    pub image: Subgroup,
    pub theta: Theta,
    /// Whether the image lies in `(Θ_ℓ)_tors`.
    pub in_torsion: bool,
    /// Surjectivity onto `Θ_ℓ` after ℓ-localization.
    pub surjective: bool,
    pub warnings: Vec<String>,
}

impl Alpha {
    /// ℓ-localized isomorphism type of the image.
    pub fn image_type(&self, ell: u64) -> NormalForm {
        self.image.normal_form().localize(ell)
    }
}

pub fn alpha_map(
    cfg: &SncConfiguration,
    labels: &EdgeLabelCochain,
    pi1: &Pi1Input,
    ell: u64,
) -> Result<Alpha> {
    pi1.validate(cfg)?;
    let complex = build_dual_complex(cfg)?;
    let full = theta_full(cfg, pi1)?;
    validate_labels(cfg, &complex, labels, pi1, &full)?;
    let theta = localize(full, ell)?;

    let width = pi1.y0.group().generator_count();
    let vectors = labels.vectors(&complex, width);
    let h1 = homology_group(&complex, 1, Coefficients::Integers)?;
    let columns: Vec<Vec<BigInt>> = h1
        .cycles
        .columns()
        .iter()
        .map(|z| pair(z, &vectors, width))
        .collect();
    let map = ModuleMap::new(
        h1.group.clone(),
        theta.local.group().clone(),
        IntMatrix::from_columns(width, &columns),
    )
    .map_err(|e| Error::CocycleViolation(e.to_string()))?;

    let image = map.image();
    let group = theta.local.group();
    let in_torsion = image
        .generators
        .columns()
        .iter()
        .all(|g| group.element_order(g).is_some());
    let surjective = map.cokernel().group.normal_form().localize(ell).is_trivial();
    let mut warnings = Vec::new();
    if !in_torsion {
        warnings.push("image of alpha is not contained in the torsion of Theta".to_string());
    }
    Ok(Alpha {
        map,
        image,
        theta,
        in_torsion,
        surjective,
        warnings,
    })
}

/// `Σ z_e · label(e)`.
pub fn pair(cycle: &[BigInt], labels: &[Vec<BigInt>], width: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); width];
    for (z, l) in cycle.iter().zip(labels) {
        if z.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(l) {
            *o += z * x;
        }
    }
    out
}

/// A connected component of `Y^(2)` and whether it has a rational point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointFlag {
    /// Geometric members of the orbit forming the base (a component or a double stratum of `D`).
    pub members: Vec<String>,
    /// `O`, `inf` for `D_j × O`, `D_j × ∞`; `P1` for a double stratum times `ℙ¹`.
    pub factor: String,
    pub has_point: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// The ℓ-part of the kernel is the image of α.
    Exact { kernel: NormalForm },
    /// The ℓ-part of the kernel is a subquotient of `(Θ_ℓ)_tors`.
    Bound { bound: NormalForm },
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, Verdict::Exact { .. })
    }

    /// The predicted kernel, or its bound.
    pub fn group(&self) -> &NormalForm {
        match self {
            Verdict::Exact { kernel } => kernel,
            Verdict::Bound { bound } => bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub ell: u64,
    pub f: u64,
    pub theta: NormalForm,
    pub theta_torsion: NormalForm,
    pub rational_points: Vec<PointFlag>,
    pub assumption_i: bool,
    pub assumption_ii: bool,
    pub alpha_image: NormalForm,
    pub alpha_surjective: bool,
    /// `H₁(Γ_{D⊗F_f}, ℤ)`.
    pub h1: NormalForm,
    /// Image of the norm map `H₁(Γ_D̄) → H₁(Γ_{D⊗F_f})`.
    pub norm_image: NormalForm,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

/// Everything the prediction consumes.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub config: SncConfiguration,
    pub pi1: Pi1Input,
    pub labels: EdgeLabelCochain,
}

impl Experiment {
    pub fn validate(&self) -> Result<()> {
        crate::complex::validate_config(&self.config).into_result()?;
        self.pi1.validate(&self.config)?;
        let complex = build_dual_complex(&self.config)?;
        let full = theta_full(&self.config, &self.pi1)?;
        validate_labels(&self.config, &complex, &self.labels, &self.pi1, &full)
    }
}

pub fn predict_kernel(exp: &Experiment, ell: u64, f: u64) -> Result<KernelReport> {
    if f == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    let alpha = alpha_map(&exp.config, &exp.labels, &exp.pi1, ell)?;
    report_from_alpha(exp, &alpha, ell, f)
}

fn report_from_alpha(exp: &Experiment, alpha: &Alpha, ell: u64, f: u64) -> Result<KernelReport> {
    let cfg = &exp.config;
    let rational_points = point_flags(cfg, f)?;
    let assumption_i = rational_points.iter().all(|p| p.has_point);

    let theta = &alpha.theta;
    let over_f = theta.local.power(f);
    let assumption_ii = over_f.fixes_all(&theta.torsion.generators);

    let mut warnings = alpha.warnings.clone();
    if assumption_ii {
        let coinv = over_f.coinvariants();
        let composite = ModuleMap::new(
            theta.torsion.group.clone(),
            coinv.group.clone(),
            coinv.projection.matrix().mul(&theta.torsion.generators),
        )?;
        if !composite.is_injective() {
            warnings.push(format!(
                "torsion of Theta does not inject into the coinvariants over the degree-{f} extension"
            ));
        }
    }

    let theta_torsion = theta.torsion.normal_form().clone();
    let verdict = if assumption_i && assumption_ii {
        Verdict::Exact {
            kernel: alpha.image_type(ell),
        }
    } else {
        Verdict::Bound {
            bound: theta_torsion.clone(),
        }
    };

    let norm = norm_map(cfg, f, 1, Coefficients::Integers)?;
    Ok(KernelReport {
        ell,
        f,
        theta: theta.local.group().normal_form().clone(),
        theta_torsion,
        rational_points,
        assumption_i,
        assumption_ii,
        alpha_image: alpha.image_type(ell),
        alpha_surjective: alpha.surjective,
        h1: norm.map.target().normal_form().clone(),
        norm_image: norm.image.normal_form().clone(),
        verdict,
        warnings,
    })
}

/// Rational-point flags for the components of `Y^(2)` over `F_f`.
pub fn point_flags(cfg: &SncConfiguration, f: u64) -> Result<Vec<PointFlag>> {
    let resolved = cfg.resolve()?;
    let orbits = resolved.orbits(f);
    let mut flags = Vec::new();
    for (depth, factors) in [(0usize, &["O", "inf"][..]), (1, &["P1"][..])] {
        let Some(level) = resolved.levels.get(depth) else {
            continue;
        };
        let labels = &orbits[depth];
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(i);
        }
        for members in groups.values() {
            let has_point = members
                .iter()
                .any(|&i| has_rational_point(&level.point_degrees[i], f));
            let ids: Vec<String> = members.iter().map(|&i| level.ids[i].clone()).collect();
            for factor in factors {
                flags.push(PointFlag {
                    members: ids.clone(),
                    factor: factor.to_string(),
                    has_point,
                });
            }
        }
    }
    Ok(flags)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Stable,
    Shrinking,
    EventuallyTrivial,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub ell: u64,
    pub reports: Vec<KernelReport>,
    pub trend: Trend,
}

/// Reports for `f = 1..=f_max`.
pub fn sweep_extensions(exp: &Experiment, ell: u64, f_max: u64) -> Result<Sweep> {
    if f_max == 0 {
        return Err(Error::InvalidArgument("sweep bound must be positive".into()));
    }
    let alpha = alpha_map(&exp.config, &exp.labels, &exp.pi1, ell)?;
    let reports = (1..=f_max)
        .map(|f| report_from_alpha(exp, &alpha, ell, f))
        .collect::<Result<Vec<_>>>()?;
    let trend = classify(&reports);
    Ok(Sweep {
        ell,
        reports,
        trend,
    })
}

fn classify(reports: &[KernelReport]) -> Trend {
    let groups: Vec<&NormalForm> = reports.iter().map(|r| r.verdict.group()).collect();
    if groups.windows(2).all(|w| w[0] == w[1]) {
        return Trend::Stable;
    }
    let size = |g: &NormalForm| (g.free_rank, g.torsion_order());
    if groups.last().is_some_and(|g| g.is_trivial()) {
        return Trend::EventuallyTrivial;
    }
    if groups.windows(2).all(|w| size(w[1]) <= size(w[0])) {
        return Trend::Shrinking;
    }
    Trend::Undetermined
}
