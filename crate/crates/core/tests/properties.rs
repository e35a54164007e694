use proptest::prelude::*;
use solvcoh::catalog::{self, random_member};
use solvcoh::cohomology::{binomial, build_complex, cohomology_dims};
use solvcoh::filiform::exterior_character;
use solvcoh::{Character, LieAlgebra, LieModule, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d))
}

fn int_vec(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-3i64..=3).prop_map(Rational::from), len)
}

fn random_character(l: &LieAlgebra, coeffs: &[i64]) -> Character {
    let ann = l.derived_algebra().annihilator();
    let mut values = vec![Rational::from(0); l.dim()];
    for (f, c) in ann.iter().zip(coeffs.iter().cycle()) {
        for (v, x) in values.iter_mut().zip(f) {
            *v += &(x * Rational::from(*c));
        }
    }
    Character::new(l, values).expect("annihilator of the derived algebra")
}

fn alternating_sum(dims: &[usize]) -> i64 {
    dims.iter().enumerate().map(|(p, d)| if p % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn exterior_character_is_palindromic(n in 0usize..12, k in 0usize..13) {
        let p = k % (n + 2);
        let ch = exterior_character(n, p).unwrap();
        prop_assert!(ch.is_palindromic());
        prop_assert_eq!(ch.value_at_one() as usize, binomial(n + 1, p));
        prop_assert!(exterior_character(n, n + 2).is_err());
    }

    #[test]
    fn random_members_satisfy_lie_axioms(seed in 0u64..40, x in int_vec(16), y in int_vec(16), z in int_vec(16)) {
        let l = random_member(seed).unwrap().algebra;
        let n = l.dim();
        let (x, y, z) = (&x[..n], &y[..n], &z[..n]);
        let xy = l.bracket(x, y);
        let yx = l.bracket(y, x);
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()));
        let j1 = l.bracket(x, &l.bracket(y, z));
        let j2 = l.bracket(y, &l.bracket(z, x));
        let j3 = l.bracket(z, &l.bracket(x, y));
        prop_assert!((0..n).all(|i| (&(&j1[i] + &j2[i]) + &j3[i]).is_zero()));
        prop_assert!(l.is_solvable());
    }

    #[test]
    fn coboundary_squares_to_zero(seed in 0u64..10, coeffs in prop::collection::vec(-2i64..=2, 1..4)) {
        let l = random_member(seed).unwrap().algebra;
        prop_assume!(l.dim() <= 8);
        let chi = random_character(&l, &coeffs);
        let cx = build_complex(&l, &LieModule::from_character(&chi)).unwrap();
        for p in 0..l.dim() {
            prop_assert!(cx.d(p + 1).mul(cx.d(p)).is_zero());
        }
        let dims = cohomology_dims(&l, &LieModule::from_character(&chi)).unwrap();
        prop_assert_eq!(alternating_sum(&dims), 0);
    }

    #[test]
    fn adjoint_euler_characteristic_vanishes(seed in 0u64..10) {
        let l = random_member(seed).unwrap().algebra;
        prop_assume!(l.dim() <= 7);
        let dims = cohomology_dims(&l, &LieModule::adjoint(&l)).unwrap();
        prop_assert_eq!(alternating_sum(&dims), 0);
    }
}

#[test]
fn random_members_are_deterministic() {
    for seed in 0..5 {
        assert_eq!(random_member(seed).unwrap(), random_member(seed).unwrap());
    }
}

#[test]
fn catalog_entries_roundtrip_through_json() {
    for entry in catalog::entries() {
        let built = catalog::build(&entry.name).unwrap();
        let back = LieAlgebra::from_json(&built.algebra.to_json()).unwrap();
        assert_eq!(back, built.algebra, "{}", entry.name);
    }
}

#[test]
fn parametric_names_match_fixed_entries() {
    assert_eq!(catalog::build("filiform(5)").unwrap().algebra, catalog::build("filiform5").unwrap().algebra);
    assert_eq!(catalog::build("s_n(3)").unwrap().algebra, catalog::build("s3").unwrap().algebra);
    assert_eq!(catalog::build("borel(G2)").unwrap().algebra, catalog::build("borel_G2").unwrap().algebra);
    assert_eq!(catalog::build("random(4)").unwrap().algebra, catalog::build("random4").unwrap().algebra);
}

#[test]
fn trivial_coefficients_give_the_unit_class() {
    for name in ["sec4_1", "heisenberg3", "borel_A2", "filiform3"] {
        let l = catalog::build(name).unwrap().algebra;
        let dims = cohomology_dims(&l, &LieModule::trivial(&l)).unwrap();
        assert_eq!(dims[0], 1, "{name}");
        assert_eq!(alternating_sum(&dims), 0, "{name}");
    }
}
