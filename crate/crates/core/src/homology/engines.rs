//! Interchangeable ways of computing `dim H_a(Γ; 𝔽_p)`, selectable by name.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{homology_group, oracle_homology, Coefficients};
use crate::complex::DeltaComplex;
use crate::error::Result;
use crate::linalg::NormalForm;

pub trait ModPEngine: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn betti(&self, complex: &DeltaComplex, a: usize, p: u64) -> Result<usize>;
}

/// Universal coefficients applied to integral homology.
struct SmithUct;

/// Invariant factors of the ℤ/p presentation.
struct SmithModP;

/// Gaussian elimination over 𝔽_p.
struct Gauss;

fn divisible_count(nf: &NormalForm, p: &BigInt) -> usize {
    nf.invariant_factors.iter().filter(|d| d.is_multiple_of(p)).count()
}

impl ModPEngine for SmithUct {
    fn name(&self) -> &'static str {
        "smith-uct"
    }

    fn describe(&self) -> &'static str {
        "integral homology via Smith normal form, then universal coefficients"
    }

    fn betti(&self, complex: &DeltaComplex, a: usize, p: u64) -> Result<usize> {
        let p_big = BigInt::from(p);
        let here = homology_group(complex, a, Coefficients::Integers)?;
        let here = here.group.normal_form();
        let below = match a {
            0 => 0,
            _ => divisible_count(
                homology_group(complex, a - 1, Coefficients::Integers)?.group.normal_form(),
                &p_big,
            ),
        };
        Ok(here.free_rank + divisible_count(here, &p_big) + below)
    }
}

impl ModPEngine for SmithModP {
    fn name(&self) -> &'static str {
        "smith-modp"
    }

    fn describe(&self) -> &'static str {
        "Smith normal form of the mod-p homology presentation"
    }

    fn betti(&self, complex: &DeltaComplex, a: usize, p: u64) -> Result<usize> {
        let h = homology_group(complex, a, Coefficients::Modulo(p))?;
        Ok(h.group.normal_form().invariant_factors.len())
    }
}

impl ModPEngine for Gauss {
    fn name(&self) -> &'static str {
        "gauss"
    }

    fn describe(&self) -> &'static str {
        "independent Gaussian elimination over F_p"
    }

    fn betti(&self, complex: &DeltaComplex, a: usize, p: u64) -> Result<usize> {
        oracle_homology(complex, a, p)
    }
}

pub fn engines() -> Vec<Box<dyn ModPEngine>> {
    vec![Box::new(SmithUct), Box::new(SmithModP), Box::new(Gauss)]
}

pub fn engine(name: &str) -> Option<Box<dyn ModPEngine>> {
    engines().into_iter().find(|e| e.name() == name)
}

pub fn engine_names() -> Vec<&'static str> {
    engines().iter().map(|e| e.name()).collect()
}
