use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use snc_core::complex::suspend;
use snc_core::homology::{homology_group, reduced_homology_group, Coefficients};
use snc_core::linalg::{
    snf, torsion_and_primary, FgAbelianGroup, IntMatrix, ModuleMap, NormalForm,
};
use snc_core::random::random_complex;
use snc_core::reciprocity::pair;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
            IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect())
        })
    })
}

fn unimodular(n: usize, seed: u64) -> IntMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..3 * n {
        let i = rng.random_range(0..n);
        let j = (i + 1 + rng.random_range(0..n - 1)) % n;
        let mut step = IntMatrix::identity(n);
        step[(i, j)] = BigInt::from(rng.random_range(-3i64..=3));
        m = m.mul(&step);
    }
    m
}

proptest! {
    #[test]
    fn smith_contract(a in matrix()) {
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        let diag = s.nonzero_diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0].is_positive());
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn normal_form_invariant_under_base_change(a in matrix(), seed in any::<u64>()) {
        let g = FgAbelianGroup::new(a.rows(), a.clone());
        let moved = unimodular(a.rows(), seed).mul(&a).mul(&unimodular(a.cols(), seed ^ 1));
        let h = FgAbelianGroup::new(a.rows(), moved);
        prop_assert_eq!(g.normal_form(), h.normal_form());
    }

    #[test]
    fn order_bookkeeping(a in matrix()) {
        let g = FgAbelianGroup::new(a.rows(), a.clone());
        let nf = g.normal_form();
        prop_assert_eq!(nf.free_rank + snf(&a).rank(), a.rows());
        if let Some(order) = g.order() {
            let det_gcd: BigInt = snf(&a).nonzero_diagonal().iter().product();
            prop_assert_eq!(order, det_gcd);
            for i in 0..a.rows() {
                let o = g.element_order(&g.generator(i)).unwrap();
                prop_assert!((g.order().unwrap() % o).is_zero());
            }
        }
    }

    #[test]
    fn torsion_reassembles(a in matrix()) {
        let g = FgAbelianGroup::new(a.rows(), a);
        let nf = g.normal_form().clone();
        let t = nf.torsion_order();
        let mut product = BigInt::one();
        for ell in primes_dividing(&t) {
            let (torsion, primary) = torsion_and_primary(&g, ell).unwrap();
            prop_assert_eq!(
                torsion.normal_form(),
                &NormalForm { invariant_factors: nf.invariant_factors.clone(), free_rank: 0 }
            );
            let mut local = nf.localize(ell);
            local.free_rank = 0;
            prop_assert_eq!(primary.normal_form(), &local);
            product *= primary.group.order().unwrap();
        }
        prop_assert_eq!(product, t);
    }

    #[test]
    fn cokernel_of_presented_map(a in matrix()) {
        let src = FgAbelianGroup::free(a.cols());
        let tgt = FgAbelianGroup::free(a.rows());
        let m = ModuleMap::new(src, tgt, a.clone()).unwrap();
        let q = m.cokernel();
        let presented = FgAbelianGroup::new(a.rows(), a);
        prop_assert_eq!(q.group.normal_form(), presented.normal_form());
        prop_assert!(q.projection.is_surjective());
    }

    #[test]
    fn suspension_shifts_reduced_homology(seed in any::<u64>(), n in prop::sample::select(vec![2u64, 3, 4, 6])) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = random_complex(&mut rng, 6, 2);
        let s = suspend(&c, "apex0", "apexinf").unwrap();
        for a in 0..=2 {
            for coeff in [Coefficients::Integers, Coefficients::Modulo(n)] {
                let up = homology_group(&s, a + 1, coeff).unwrap();
                let down = reduced_homology_group(&c, a, coeff).unwrap();
                prop_assert_eq!(up.group.normal_form(), down.group.normal_form());
            }
        }
    }

    #[test]
    fn pairing_is_linear(
        z1 in prop::collection::vec(-5i64..=5, 6),
        z2 in prop::collection::vec(-5i64..=5, 6),
        labels in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 6),
    ) {
        let labels: Vec<Vec<BigInt>> = labels.into_iter().map(|l| l.into_iter().map(BigInt::from).collect()).collect();
        let z1: Vec<BigInt> = z1.into_iter().map(BigInt::from).collect();
        let z2: Vec<BigInt> = z2.into_iter().map(BigInt::from).collect();
        let sum: Vec<BigInt> = z1.iter().zip(&z2).map(|(a, b)| a + b).collect();
        let lhs = pair(&sum, &labels, 2);
        let rhs: Vec<BigInt> = pair(&z1, &labels, 2).iter().zip(pair(&z2, &labels, 2)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(lhs, rhs);
    }
}

fn primes_dividing(n: &BigInt) -> Vec<u64> {
    let mut rest = u64::try_from(n.clone()).expect("small torsion");
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            out.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}
