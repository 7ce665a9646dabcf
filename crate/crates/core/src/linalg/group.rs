//! Finitely generated abelian groups given by presentations.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::{snf, SnfDecomposition};
use crate::error::{Error, Result};

/// Isomorphism type: invariant factors `d_1 | d_2 | …` (each > 1) and free rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct NormalForm {
    #[serde(with = "super::json_int::vec")]
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl NormalForm {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        NormalForm {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n = n.into();
        if n.is_zero() {
            return Self::free(1);
        }
        let n = n.abs();
        NormalForm {
            invariant_factors: if n.is_one() { vec![] } else { vec![n] },
            free_rank: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// The ℓ-adic localization: free rank kept, each factor replaced by its ℓ-part.
    pub fn localize(&self, ell: u64) -> NormalForm {
        let ell = BigInt::from(ell);
        let invariant_factors = self
            .invariant_factors
            .iter()
            .map(|d| prime_power_part(d, &ell))
            .filter(|d| !d.is_one())
            .collect();
        NormalForm {
            invariant_factors,
            free_rank: self.free_rank,
        }
    }

    /// Builds a normal form from arbitrary cyclic orders (0 meaning ℤ).
    pub fn from_cyclic_orders(orders: &[BigInt]) -> NormalForm {
        let rank = orders.iter().filter(|d| d.is_zero()).count();
        let finite: Vec<BigInt> = orders.iter().filter(|d| !d.is_zero()).cloned().collect();
        let relations = IntMatrix::diagonal(finite.len(), finite.len(), &finite);
        let mut nf = FgAbelianGroup::new(finite.len(), relations).normal_form().clone();
        nf.free_rank += rank;
        nf
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

fn prime_power_part(d: &BigInt, ell: &BigInt) -> BigInt {
    let mut part = BigInt::one();
    let mut rest = d.abs();
    while !rest.is_zero() && rest.is_multiple_of(ell) {
        rest /= ell;
        part *= ell;
    }
    part
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

#[derive(Debug)]
struct Structure {
    snf: SnfDecomposition,
    normal_form: NormalForm,
}

/// A finitely generated abelian group `ℤ^generators / ⟨relation columns⟩`.
#[derive(Debug)]
pub struct FgAbelianGroup {
    generators: usize,
    relations: IntMatrix,
    structure: OnceLock<Structure>,
}

impl Clone for FgAbelianGroup {
    fn clone(&self) -> Self {
        FgAbelianGroup::new(self.generators, self.relations.clone())
    }
}

impl FgAbelianGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Self {
        assert_eq!(
            relations.rows(),
            generators,
            "relation vectors must have one entry per generator"
        );
        FgAbelianGroup {
            generators,
            relations,
            structure: OnceLock::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::new(1, IntMatrix::from_vec(1, 1, vec![n.into()]))
    }

    /// `ℤ/d_1 ⊕ … ⊕ ℤ^r` on `factors.len() + r` generators.
    pub fn from_normal_form(nf: &NormalForm) -> Self {
        let k = nf.invariant_factors.len();
        let n = k + nf.free_rank;
        Self::new(n, IntMatrix::diagonal(n, k, &nf.invariant_factors))
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    fn structure(&self) -> &Structure {
        self.structure.get_or_init(|| {
            let snf = snf(&self.relations);
            let invariant_factors = snf
                .nonzero_diagonal()
                .into_iter()
                .filter(|d| !d.is_one())
                .collect();
            let normal_form = NormalForm {
                invariant_factors,
                free_rank: self.generators - snf.rank(),
            };
            Structure { snf, normal_form }
        })
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.structure().normal_form
    }

    pub fn is_trivial(&self) -> bool {
        self.normal_form().is_trivial()
    }

    pub fn is_isomorphic(&self, other: &FgAbelianGroup) -> bool {
        self.normal_form() == other.normal_form()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.normal_form().order()
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.generators]
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut e = self.zero_element();
        e[i] = BigInt::one();
        e
    }

    /// Coordinates of `x` in the Smith basis: entry `i < rank` is taken
    /// modulo `d_i`, later entries are free coordinates.
    pub fn smith_coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.generators, "element has wrong length");
        let s = &self.structure().snf;
        let mut y = s.u.mul_vec(x);
        for (i, c) in y.iter_mut().enumerate().take(s.rank()) {
            *c = c.mod_floor(&s.d[(i, i)]);
        }
        y
    }

    /// Canonical representative of the class of `x`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let s = &self.structure().snf;
        s.u_inv.mul_vec(&self.smith_coordinates(x))
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.smith_coordinates(x).iter().all(Zero::is_zero)
    }

    pub fn elements_equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&diff)
    }

    /// Element order, `None` for elements of infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let s = &self.structure().snf;
        let y = self.smith_coordinates(x);
        let mut order = BigInt::one();
        for (i, c) in y.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i >= s.rank() {
                return None;
            }
            let d = &s.d[(i, i)];
            order = order.lcm(&(d / d.gcd(c)));
        }
        Some(order)
    }

    /// Cyclic summands of the Smith decomposition: `(generator vector, order)`,
    /// order zero meaning infinite cyclic. Trivial summands are skipped.
    pub fn cyclic_decomposition(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        let s = &self.structure().snf;
        (0..self.generators)
            .filter_map(|i| {
                let d = s.diagonal_entry(i);
                if d.is_one() {
                    return None;
                }
                Some((s.u_inv.column(i), d))
            })
            .collect()
    }

    /// Solves `Σ c_j h_j = x` in the group for the given columns `h_j`.
    pub fn express_in(&self, columns: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let system = columns.hstack(&self.relations);
        let sol = snf(&system).solve(x)?;
        Some(sol[..columns.cols()].to_vec())
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        FgAbelianGroup::new(
            self.generators + other.generators,
            self.relations.direct_sum(&other.relations),
        )
    }
}

/// A homomorphism between presented groups, acting on generator columns.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMatrix,
}

impl ModuleMap {
    /// Checks shapes and that every source relation maps to zero in the target.
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(Error::ShapeMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generator_count(),
                source.generator_count()
            )));
        }
        let images = matrix.mul(source.relations());
        for (j, col) in images.columns().iter().enumerate() {
            if !target.is_zero(col) {
                return Err(Error::IllDefinedMap(format!(
                    "relation {j} of the source does not map into the target relation lattice"
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(group: &FgAbelianGroup) -> Self {
        ModuleMap {
            source: group.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(group.generator_count()),
        }
    }

    pub fn zero(source: &FgAbelianGroup, target: &FgAbelianGroup) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.generator_count(), source.generator_count()),
        }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.target.generator_count() != other.source.generator_count() {
            return Err(Error::ShapeMismatch(
                "composition of maps with incompatible generator counts".into(),
            ));
        }
        ModuleMap::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    /// Equality as homomorphisms: every source generator has equal images.
    pub fn agrees_with(&self, other: &ModuleMap) -> bool {
        self.matrix.rows() == other.matrix.rows()
            && self.matrix.cols() == other.matrix.cols()
            && self
                .matrix
                .sub(&other.matrix)
                .columns()
                .iter()
                .all(|c| self.target.is_zero(c))
    }

    pub fn cokernel(&self) -> Quotient {
        let group = FgAbelianGroup::new(
            self.target.generator_count(),
            self.target.relations().hstack(&self.matrix),
        );
        let projection = ModuleMap {
            source: self.target.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(self.target.generator_count()),
        };
        Quotient { group, projection }
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated_by(&self.target, self.matrix.clone())
    }

    pub fn kernel(&self) -> Subgroup {
        let system = self.matrix.hstack(self.target.relations());
        let basis = snf(&system).kernel_basis();
        let rows: Vec<usize> = (0..self.source.generator_count()).collect();
        Subgroup::generated_by(&self.source, basis.select_rows(&rows))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_trivial()
    }
}

/// A quotient group with its projection from the ambient group.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FgAbelianGroup,
    pub projection: ModuleMap,
}

/// A subgroup as an abstract group plus its generating vectors in the ambient group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FgAbelianGroup,
    /// Ambient-generator coordinates of the subgroup generators, as columns.
    pub generators: IntMatrix,
    pub inclusion: ModuleMap,
}

impl Subgroup {
    pub fn generated_by(ambient: &FgAbelianGroup, generators: IntMatrix) -> Subgroup {
        assert_eq!(generators.rows(), ambient.generator_count());
        let k = generators.cols();
        let system = generators.hstack(ambient.relations());
        let basis = snf(&system).kernel_basis();
        let rows: Vec<usize> = (0..k).collect();
        let group = FgAbelianGroup::new(k, basis.select_rows(&rows));
        let inclusion = ModuleMap {
            source: group.clone(),
            target: ambient.clone(),
            matrix: generators.clone(),
        };
        Subgroup {
            group,
            generators,
            inclusion,
        }
    }

    pub fn normal_form(&self) -> &NormalForm {
        self.group.normal_form()
    }

    /// Whether `x` lies in the subgroup.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.inclusion.target.express_in(&self.generators, x).is_some()
    }
}

/// Torsion subgroup and ℓ-primary part of `group`.
pub fn torsion_and_primary(group: &FgAbelianGroup, ell: u64) -> Result<(Subgroup, Subgroup)> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let ell_big = BigInt::from(ell);
    let mut torsion = Vec::new();
    let mut primary = Vec::new();
    for (g, d) in group.cyclic_decomposition() {
        if d.is_zero() {
            continue;
        }
        let part = prime_power_part(&d, &ell_big);
        if !part.is_one() {
            let cofactor = &d / &part;
            primary.push(g.iter().map(|x| x * &cofactor).collect());
        }
        torsion.push(g);
    }
    let n = group.generator_count();
    Ok((
        Subgroup::generated_by(group, IntMatrix::from_columns(n, &torsion)),
        Subgroup::generated_by(group, IntMatrix::from_columns(n, &primary)),
    ))
}

/// Generators of the prime-to-ℓ torsion of `group`.
pub fn prime_to_ell_torsion(group: &FgAbelianGroup, ell: u64) -> Result<Subgroup> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let ell_big = BigInt::from(ell);
    let gens: Vec<Vec<BigInt>> = group
        .cyclic_decomposition()
        .into_iter()
        .filter(|(_, d)| !d.is_zero())
        .filter_map(|(g, d)| {
            let part = prime_power_part(&d, &ell_big);
            (part != d).then(|| g.iter().map(|x| x * &part).collect())
        })
        .collect();
    Ok(Subgroup::generated_by(
        group,
        IntMatrix::from_columns(group.generator_count(), &gens),
    ))
}

/// A group with a finite-order automorphism (the Frobenius).
#[derive(Clone, Debug)]
pub struct GaloisModule {
    group: FgAbelianGroup,
    frobenius: IntMatrix,
    order: u64,
}

impl GaloisModule {
    /// Validates that `frobenius` is an automorphism whose `order`-th power is trivial.
    pub fn new(group: FgAbelianGroup, frobenius: IntMatrix, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidAction("Frobenius order must be positive".into()));
        }
        let map = ModuleMap::new(group.clone(), group.clone(), frobenius.clone())
            .map_err(|e| Error::InvalidAction(format!("Frobenius is not a well-defined endomorphism: {e}")))?;
        // Surjective endomorphisms of finitely generated abelian groups are injective.
        if !map.is_surjective() {
            return Err(Error::InvalidAction("Frobenius is not invertible".into()));
        }
        let module = GaloisModule {
            group,
            frobenius,
            order,
        };
        let full_turn = GaloisModule {
            frobenius: module.frobenius.pow(order),
            ..module.clone()
        };
        if !full_turn.acts_trivially() {
            return Err(Error::InvalidAction(format!(
                "Frobenius power {order} is not the identity"
            )));
        }
        Ok(module)
    }

    pub fn trivial_action(group: FgAbelianGroup) -> Self {
        let n = group.generator_count();
        GaloisModule {
            group,
            frobenius: IntMatrix::identity(n),
            order: 1,
        }
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn frobenius(&self) -> &IntMatrix {
        &self.frobenius
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn frobenius_map(&self) -> ModuleMap {
        ModuleMap {
            source: self.group.clone(),
            target: self.group.clone(),
            matrix: self.frobenius.clone(),
        }
    }

    /// The module restricted to the subgroup of index `f` in the Galois group.
    pub fn power(&self, f: u64) -> GaloisModule {
        let order = (self.order / self.order.gcd(&f)).max(1);
        GaloisModule {
            group: self.group.clone(),
            // φ^order is trivial on the group, so the reduced exponent gives the same map.
            frobenius: self.frobenius.pow(f % self.order),
            order,
        }
    }

    pub fn acts_trivially(&self) -> bool {
        self.fixes_all(&IntMatrix::identity(self.group.generator_count()))
    }

    /// Whether every column of `elements` is fixed by Frobenius.
    pub fn fixes_all(&self, elements: &IntMatrix) -> bool {
        let moved = self.frobenius.mul(elements).sub(elements);
        moved.columns().iter().all(|c| self.group.is_zero(c))
    }

    /// `M / (φ − 1)M` with its projection.
    pub fn coinvariants(&self) -> Quotient {
        let n = self.group.generator_count();
        let delta = self.frobenius.sub(&IntMatrix::identity(n));
        let map = ModuleMap {
            source: self.group.clone(),
            target: self.group.clone(),
            matrix: delta,
        };
        map.cokernel()
    }

    /// Passes to a quotient of the underlying group; the Frobenius must preserve the kernel.
    pub fn quotient_by(&self, extra_relations: &IntMatrix) -> Result<GaloisModule> {
        let group = FgAbelianGroup::new(
            self.group.generator_count(),
            self.group.relations().hstack(extra_relations),
        );
        GaloisModule::new(group, self.frobenius.clone(), self.order)
    }
}

/// Coinvariants of a Galois module.
pub fn coinvariants(module: &GaloisModule) -> Quotient {
    module.coinvariants()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_vec;

    fn nf(factors: &[i64], rank: usize) -> NormalForm {
        NormalForm {
            invariant_factors: int_vec(factors),
            free_rank: rank,
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(FgAbelianGroup::cyclic(7).normal_form(), &nf(&[7], 0));
        assert_eq!(FgAbelianGroup::free(2).normal_form(), &nf(&[], 2));
        let g = FgAbelianGroup::new(2, IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(g.normal_form(), &nf(&[6], 0));
    }

    #[test]
    fn display_uses_divisibility_order() {
        assert_eq!(nf(&[2, 4], 1).to_string(), "Z ⊕ Z/2 ⊕ Z/4");
        assert_eq!(nf(&[], 3).to_string(), "Z^3");
        assert_eq!(NormalForm::trivial().to_string(), "0");
    }

    #[test]
    fn cokernel_examples() {
        let z5 = FgAbelianGroup::cyclic(5);
        let from_zero = ModuleMap::zero(&FgAbelianGroup::trivial(), &z5);
        assert_eq!(from_zero.cokernel().group.normal_form(), &nf(&[5], 0));

        let g = FgAbelianGroup::new(2, IntMatrix::from_rows(&[vec![4, 0], vec![0, 0]]));
        assert!(ModuleMap::identity(&g).cokernel().group.is_trivial());

        let z = FgAbelianGroup::free(1);
        let times_two = ModuleMap::new(z.clone(), z, IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(times_two.cokernel().group.normal_form(), &nf(&[2], 0));
    }

    #[test]
    fn ill_defined_map_is_rejected() {
        // ℤ/2 → ℤ/3, 1 ↦ 1 does not respect 2·1 = 0.
        let err = ModuleMap::new(
            FgAbelianGroup::cyclic(2),
            FgAbelianGroup::cyclic(3),
            IntMatrix::from_rows(&[vec![1]]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::IllDefinedMap(_)));
    }

    #[test]
    fn image_examples() {
        let n = 6;
        let surj = ModuleMap::new(
            FgAbelianGroup::free(1),
            FgAbelianGroup::cyclic(n),
            IntMatrix::from_rows(&[vec![1]]),
        )
        .unwrap();
        assert_eq!(surj.image().normal_form(), &nf(&[6], 0));

        let zero = ModuleMap::zero(&FgAbelianGroup::free(3), &FgAbelianGroup::cyclic(4));
        assert!(zero.image().group.is_trivial());

        // ℤ → ℤ ⊕ ℤ/4, 1 ↦ (0, 2)
        let target = FgAbelianGroup::new(2, IntMatrix::from_rows(&[vec![0], vec![4]]));
        let f = ModuleMap::new(
            FgAbelianGroup::free(1),
            target,
            IntMatrix::from_rows(&[vec![0], vec![2]]),
        )
        .unwrap();
        assert_eq!(f.image().normal_form(), &nf(&[2], 0));
        assert!(!f.is_injective());
        assert_eq!(f.kernel().normal_form(), &nf(&[], 1));
    }

    #[test]
    fn torsion_and_primary_examples() {
        // ℤ ⊕ ℤ/12, ℓ = 2
        let g = FgAbelianGroup::new(2, IntMatrix::from_rows(&[vec![0], vec![12]]));
        let (t, p) = torsion_and_primary(&g, 2).unwrap();
        assert_eq!(t.normal_form(), &nf(&[12], 0));
        assert_eq!(p.normal_form(), &nf(&[4], 0));
        let (_, p3) = torsion_and_primary(&g, 3).unwrap();
        assert_eq!(p3.normal_form(), &nf(&[3], 0));

        let (t, p) = torsion_and_primary(&FgAbelianGroup::free(3), 5).unwrap();
        assert!(t.group.is_trivial() && p.group.is_trivial());

        let (_, p) = torsion_and_primary(&FgAbelianGroup::cyclic(9), 2).unwrap();
        assert!(p.group.is_trivial());

        assert!(matches!(
            torsion_and_primary(&g, 6),
            Err(Error::NotPrime(6))
        ));
    }

    #[test]
    fn coinvariant_examples() {
        let trivial = GaloisModule::trivial_action(FgAbelianGroup::cyclic(5));
        assert_eq!(trivial.coinvariants().group.normal_form(), &nf(&[5], 0));

        let swap = GaloisModule::new(
            FgAbelianGroup::free(2),
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
            2,
        )
        .unwrap();
        assert_eq!(swap.coinvariants().group.normal_form(), &nf(&[], 1));

        let neg = GaloisModule::new(FgAbelianGroup::free(1), IntMatrix::from_rows(&[vec![-1]]), 2)
            .unwrap();
        assert_eq!(neg.coinvariants().group.normal_form(), &nf(&[2], 0));
    }

    #[test]
    fn non_invertible_frobenius_is_rejected() {
        let err = GaloisModule::new(FgAbelianGroup::free(1), IntMatrix::from_rows(&[vec![2]]), 1)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidAction(_)));
        // Multiplication by 2 is invertible on ℤ/3 and has order 2 there.
        let ok = GaloisModule::new(FgAbelianGroup::cyclic(3), IntMatrix::from_rows(&[vec![2]]), 2);
        assert!(ok.is_ok());
        let wrong_order =
            GaloisModule::new(FgAbelianGroup::cyclic(3), IntMatrix::from_rows(&[vec![2]]), 3);
        assert!(wrong_order.is_err());
    }

    #[test]
    fn element_orders() {
        let g = FgAbelianGroup::new(2, IntMatrix::from_rows(&[vec![0], vec![4]]));
        assert_eq!(g.element_order(&int_vec(&[0, 2])), Some(BigInt::from(2)));
        assert_eq!(g.element_order(&int_vec(&[1, 0])), None);
        assert_eq!(g.element_order(&int_vec(&[0, 4])), Some(BigInt::from(1)));
    }
}
