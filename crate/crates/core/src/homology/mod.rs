//! Homology of Δ-complexes over ℤ and ℤ/n, and maps induced by chain maps.
//!
//! Cycles are taken in the basis given by the right Smith transform of
//! `∂_a`; ℤ/n coefficients are handled by presenting
//! `{x : ∂x ≡ 0 mod n} / (im ∂_{a+1} + n·C_a)` directly rather than by
//! reducing integral homology.

mod engines;
mod oracle;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{ChainMap, DeltaComplex};
use crate::error::{Error, Result};
use crate::linalg::{snf, FgAbelianGroup, IntMatrix, ModuleMap, NormalForm};

pub use engines::{engine, engine_names, engines, ModPEngine};
pub use oracle::{oracle_homology, ORACLE_SIMPLEX_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Integers,
    Modulo(u64),
}

impl Coefficients {
    fn modulus(self) -> Option<BigInt> {
        match self {
            Coefficients::Integers => None,
            Coefficients::Modulo(n) => Some(BigInt::from(n)),
        }
    }

    pub fn check(self) -> Result<()> {
        match self {
            Coefficients::Modulo(n) if n < 2 => Err(Error::InvalidArgument(format!(
                "coefficient modulus must be at least 2, got {n}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Modulo(n) => write!(f, "Z/{n}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "z" {
            return Ok(Coefficients::Integers);
        }
        let n = lower
            .strip_prefix("z/")
            .and_then(|n| n.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown coefficients '{s}', expected z or z/N")))?;
        let c = Coefficients::Modulo(n);
        c.check()?;
        Ok(c)
    }
}

/// `H_a(Γ; C)` with the cycles generating it.
#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub degree: usize,
    pub coefficients: Coefficients,
    pub reduced: bool,
    /// Presented on the cycle basis below.
    pub group: FgAbelianGroup,
    /// Integral chains (columns) representing the group generators.
    pub cycles: IntMatrix,
    coordinate_rows: IntMatrix,
    scales: Vec<BigInt>,
}

impl HomologyResult {
    /// Coordinates of a (mod-n) cycle in the cycle basis, `None` if `chain`
    /// is not a cycle.
    pub fn coordinates(&self, chain: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut full = self.coordinate_rows.mul_vec(chain);
        let mut out = Vec::with_capacity(self.scales.len());
        for (y, s) in full.drain(..).zip(&self.scales) {
            if s.is_zero() {
                if !y.is_zero() {
                    return None;
                }
                continue;
            }
            let (q, r) = y.div_rem(s);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(out)
    }

    pub fn generator_count(&self) -> usize {
        self.cycles.cols()
    }
}

pub fn homology_group(complex: &DeltaComplex, a: usize, coeff: Coefficients) -> Result<HomologyResult> {
    compute(complex, a, coeff, false)
}

/// Reduced homology: the augmentation replaces `∂_0`.
pub fn reduced_homology_group(
    complex: &DeltaComplex,
    a: usize,
    coeff: Coefficients,
) -> Result<HomologyResult> {
    compute(complex, a, coeff, true)
}

fn compute(complex: &DeltaComplex, a: usize, coeff: Coefficients, reduced: bool) -> Result<HomologyResult> {
    coeff.check()?;
    let c = complex.count(a);
    let boundary = if a == 0 && reduced {
        IntMatrix::from_vec(1, c, vec![BigInt::one(); c])
    } else {
        complex.boundary_matrix(a)
    };
    let next = complex.boundary_matrix(a + 1);
    let s = snf(&boundary);
    let modulus = coeff.modulus();

    // `scales[i] == 0` marks a direction that contributes no cycles.
    let scales: Vec<BigInt> = (0..c)
        .map(|i| {
            let d = s.diagonal_entry(i);
            if d.is_zero() {
                BigInt::one()
            } else {
                match &modulus {
                    None => BigInt::zero(),
                    Some(n) => n / n.gcd(&d),
                }
            }
        })
        .collect();

    let basis: Vec<usize> = (0..c).filter(|&i| !scales[i].is_zero()).collect();
    let mut cycles = s.v.select_columns(&basis);
    for (k, &i) in basis.iter().enumerate() {
        if !scales[i].is_one() {
            for r in 0..c {
                cycles[(r, k)] *= &scales[i];
            }
        }
    }

    let mut result = HomologyResult {
        degree: a,
        coefficients: coeff,
        reduced,
        group: FgAbelianGroup::trivial(),
        cycles,
        coordinate_rows: s.v_inv.clone(),
        scales,
    };

    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    for b in next.columns() {
        relations.push(
            result
                .coordinates(&b)
                .expect("boundaries are cycles since ∂∂ = 0"),
        );
    }
    if let Some(n) = &modulus {
        for j in 0..c {
            let mut e = vec![BigInt::zero(); c];
            e[j] = n.clone();
            relations.push(result.coordinates(&e).expect("n·C_a consists of mod-n cycles"));
        }
    }
    result.group = FgAbelianGroup::new(basis.len(), IntMatrix::from_columns(basis.len(), &relations));
    Ok(result)
}

/// The map `H_a(source) → H_a(target)` of a chain map, on the chosen cycle bases.
pub fn induced_map(f: &ChainMap, a: usize, coeff: Coefficients) -> Result<ModuleMap> {
    let src = homology_group(f.source(), a, coeff)?;
    let tgt = homology_group(f.target(), a, coeff)?;
    induced_map_between(f, &src, &tgt)
}

/// Induced map between already computed homology groups of the source and target.
pub fn induced_map_between(
    f: &ChainMap,
    src: &HomologyResult,
    tgt: &HomologyResult,
) -> Result<ModuleMap> {
    let a = src.degree;
    let chain_matrix = f.matrix(a);
    let mut columns = Vec::with_capacity(src.generator_count());
    for z in src.cycles.columns() {
        let image = chain_matrix.mul_vec(&z);
        let coords = tgt.coordinates(&image).ok_or(Error::NotAChainMap(a))?;
        columns.push(coords);
    }
    ModuleMap::new(
        src.group.clone(),
        tgt.group.clone(),
        IntMatrix::from_columns(tgt.generator_count(), &columns),
    )
}

/// `|H_a ⊗ ℤ/n| · |Tor(H_{a−1}, ℤ/n)|` computed from integral homology; by
/// universal coefficients this is `|H_a(Γ; ℤ/n)|`.
pub fn universal_coefficient_order(here: &NormalForm, below: Option<&NormalForm>, n: u64) -> BigInt {
    let n = BigInt::from(n);
    let gcd_product = |nf: &NormalForm| -> BigInt { nf.invariant_factors.iter().map(|d| d.gcd(&n)).product() };
    let mut order = num_traits::pow(n.clone(), here.free_rank) * gcd_product(here);
    if let Some(b) = below {
        order *= gcd_product(b);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{suspend, ComplexBuilder};
    use crate::linalg::int_vec;

    fn cycle(n: usize) -> DeltaComplex {
        let mut b = ComplexBuilder::new();
        let vs: Vec<usize> = (0..n).map(|i| b.vertex(format!("v{i}"))).collect();
        for i in 0..n - 1 {
            b.edge(format!("e{i}"), vs[i], vs[i + 1]);
        }
        b.edge(format!("e{}", n - 1), vs[0], vs[n - 1]);
        b.build().unwrap()
    }

    fn multi_edge() -> DeltaComplex {
        let mut b = ComplexBuilder::new();
        let (u, v) = (b.vertex("C1"), b.vertex("C2"));
        b.edge("p", u, v);
        b.edge("q", u, v);
        b.build().unwrap()
    }

    fn nf(factors: &[i64], rank: usize) -> NormalForm {
        NormalForm {
            invariant_factors: int_vec(factors),
            free_rank: rank,
        }
    }

    #[test]
    fn four_cycle_h1() {
        let h = homology_group(&cycle(4), 1, Coefficients::Integers).unwrap();
        assert_eq!(h.group.normal_form(), &nf(&[], 1));
        for z in h.cycles.columns() {
            assert!(cycle(4).boundary_matrix(1).mul_vec(&z).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn point_and_multiedge() {
        let mut b = ComplexBuilder::new();
        b.vertex("x");
        let point = b.build().unwrap();
        assert_eq!(homology_group(&point, 0, Coefficients::Integers).unwrap().group.normal_form(), &nf(&[], 1));
        assert!(homology_group(&point, 3, Coefficients::Integers).unwrap().group.is_trivial());
        assert_eq!(homology_group(&multi_edge(), 1, Coefficients::Integers).unwrap().group.normal_form(), &nf(&[], 1));
    }

    #[test]
    fn suspended_cycle_mod_six() {
        let s = suspend(&cycle(4), "o", "inf").unwrap();
        let h = homology_group(&s, 2, Coefficients::Modulo(6)).unwrap();
        assert_eq!(h.group.normal_form(), &nf(&[6], 0));
        let h0 = homology_group(&s, 0, Coefficients::Modulo(6)).unwrap();
        assert_eq!(h0.group.normal_form(), &nf(&[6], 0));
        let h1 = homology_group(&s, 1, Coefficients::Modulo(6)).unwrap();
        assert!(h1.group.is_trivial());
    }

    #[test]
    fn reduced_h0() {
        let mut b = ComplexBuilder::new();
        b.vertex("x");
        b.vertex("y");
        let two_points = b.build().unwrap();
        let h = reduced_homology_group(&two_points, 0, Coefficients::Integers).unwrap();
        assert_eq!(h.group.normal_form(), &nf(&[], 1));
        let h = reduced_homology_group(&cycle(5), 0, Coefficients::Modulo(4)).unwrap();
        assert!(h.group.is_trivial());
    }

    #[test]
    fn bad_modulus_rejected() {
        assert!(homology_group(&cycle(3), 1, Coefficients::Modulo(1)).is_err());
        assert!("z/1".parse::<Coefficients>().is_err());
        assert_eq!("Z/6".parse::<Coefficients>().unwrap(), Coefficients::Modulo(6));
        assert_eq!("z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
    }

    #[test]
    fn identity_induces_identity() {
        let c = cycle(5);
        let id = ChainMap::identity(&c);
        for a in 0..2 {
            let m = induced_map(&id, a, Coefficients::Integers).unwrap();
            assert!(m.agrees_with(&ModuleMap::identity(m.source())));
        }
    }

    #[test]
    fn rotation_quotient_doubles_the_cycle() {
        // v0..v3 → C1,C2 by parity; edges e0,e2 ↦ p and e1 ↦ q, e3 = (v0,v3) ↦ q.
        let square = cycle(4);
        let quotient = multi_edge();
        let f = ChainMap::new(
            square,
            quotient,
            vec![vec![(0, 1), (1, 1), (0, 1), (1, 1)], vec![(0, 1), (1, -1), (0, 1), (1, 1)]],
        )
        .unwrap();
        let m = induced_map(&f, 1, Coefficients::Integers).unwrap();
        assert_eq!(m.matrix().rows(), 1);
        assert_eq!(m.matrix().cols(), 1);
        let entry = m.matrix()[(0, 0)].clone();
        assert!(entry == BigInt::from(2) || entry == BigInt::from(-2), "{entry}");
    }

    #[test]
    fn vertex_inclusion_is_iso_on_h0() {
        let mut b = ComplexBuilder::new();
        b.vertex("x");
        let point = b.build().unwrap();
        let target = cycle(4);
        let f = ChainMap::new(point, target, vec![vec![(2, 1)]]).unwrap();
        let m = induced_map(&f, 0, Coefficients::Integers).unwrap();
        assert!(m.is_injective() && m.is_surjective());
    }
}
