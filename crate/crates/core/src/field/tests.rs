use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

fn prime(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn golden_ratio_in_f22621() {
    let f = prime(22621);
    let u = f.golden_ratio().unwrap();
    assert_eq!(u, 1873);
    assert_eq!(f.mul(&u, &u), 1874);
}

#[test]
fn golden_ratio_in_f11() {
    let f = prime(11);
    let u = f.golden_ratio().unwrap();
    assert!(u == 4 || u == 8);
    let c = f.golden_conjugate().unwrap();
    assert_eq!(f.mul(&u, &c), f.from_i64(-1));
    assert_eq!(f.add(&u, &c), 1);
}

#[test]
fn golden_ratio_over_f2_needs_extension() {
    assert!(matches!(prime(2).golden_ratio(), Err(Error::Unavailable(_))));
    let spec = FieldSpec { p: 2, extension: Extension::Golden, seed: 0 };
    let FieldHandle::Extension(f4) = make_field(&spec).unwrap() else {
        panic!("expected an extension of F_2");
    };
    let u = f4.golden_ratio().unwrap();
    assert_eq!(f4.mul(&u, &u), f4.add(&u, &f4.one()));
}

#[test]
fn golden_ratio_falls_back_to_extension() {
    // 5 is not a square mod 7
    let spec = FieldSpec { p: 7, extension: Extension::Golden, seed: 3 };
    let FieldHandle::Extension(f) = make_field(&spec).unwrap() else {
        panic!("expected an extension of F_7");
    };
    let u = f.golden_ratio().unwrap();
    assert_eq!(f.mul(&u, &u), f.add(&u, &f.one()));
    assert_eq!(f.spec().extension, Extension::Golden);
}

fn assert_exact_order<F: Field>(f: &F, z: &F::Elem, m: u64) {
    assert_eq!(f.pow(z, m), f.one());
    for k in 1..m {
        assert_ne!(f.pow(z, k), f.one(), "order divides {k}");
    }
}

#[test]
fn roots_of_unity_small_primes() {
    assert_eq!(prime(7).primitive_root_of_unity(1).unwrap(), 1);
    let z = prime(7).primitive_root_of_unity(3).unwrap();
    assert!(z == 2 || z == 4);
    let z = prime(13).primitive_root_of_unity(4).unwrap();
    assert!(z == 5 || z == 8);
    let f31 = prime(31);
    let z = f31.primitive_root_of_unity(5).unwrap();
    assert_exact_order(&f31, &z, 5);
    assert!(matches!(prime(7).primitive_root_of_unity(5), Err(Error::Unavailable(_))));
}

#[test]
fn roots_of_unity_in_extensions() {
    let spec = FieldSpec { p: 7, extension: Extension::Zeta(5), seed: 11 };
    let FieldHandle::Extension(f) = make_field(&spec).unwrap() else {
        panic!("7 is not 1 mod 5");
    };
    assert_eq!(f.degree(), 4);
    let z = f.primitive_root_of_unity(5).unwrap();
    assert_exact_order(&f, &z, 5);
}

#[test]
fn default_primes_host_constants() {
    for p in DEFAULT_PRIMES {
        let f = prime(p);
        let u = f.golden_ratio().unwrap();
        assert_eq!(f.mul(&u, &u), f.add(&u, &1));
        for m in 1..=8 {
            let z = f.primitive_root_of_unity(m).unwrap();
            assert_exact_order(&f, &z, m);
        }
    }
}

#[test]
fn make_field_rejects_bad_specs() {
    assert!(matches!(make_field(&FieldSpec::prime(91)), Err(Error::InvalidField(_))));
    assert!(make_field(&FieldSpec::prime(1)).is_err());
    let q = FieldSpec { p: 0, extension: Extension::Golden, seed: 0 };
    assert!(matches!(make_field(&q), Err(Error::Unavailable(_))));
    assert!(matches!(make_field(&FieldSpec::prime(0)), Ok(FieldHandle::Rational(_))));
}

#[test]
fn spec_json_shapes() {
    let s: FieldSpec =
        serde_json::from_str(r#"{"p": "22621", "extension": "golden", "seed": 5}"#).unwrap();
    assert_eq!(s, FieldSpec { p: 22621, extension: Extension::Golden, seed: 5 });
    let s: FieldSpec = serde_json::from_str(r#"{"p": 31, "extension": {"zeta": 5}}"#).unwrap();
    assert_eq!(s.extension, Extension::Zeta(5));
    let back: FieldSpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
}

fn axioms<F: Field>(f: &F, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let a = f.random(&mut rng);
        let b = f.random_nonzero(&mut rng);
        let c = f.random(&mut rng);
        assert_eq!(f.mul(&f.div(&a, &b).unwrap(), &b), a);
        assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        assert_eq!(f.parse_elem(&f.format(&a)).unwrap(), a);
    }
}

#[test]
fn field_axioms_hold() {
    axioms(&prime(DEFAULT_PRIMES[0]), 1);
    axioms(&prime(22621), 2);
    axioms(&prime(2), 3);
    axioms(&ExtensionField::random_irreducible(31, 3, 9).unwrap(), 4);
    axioms(&ExtensionField::new(2, vec![1, 1], 0).unwrap(), 5);
    axioms(&RationalField::new(0), 6);
}

#[test]
fn irreducibility_test() {
    // t^2 + 1 splits mod 5, stays irreducible mod 7
    assert!(ExtensionField::new(5, vec![1, 0], 0).is_err());
    assert!(ExtensionField::new(7, vec![1, 0], 0).is_ok());
    // t^4 + 1 = (t^2+1)^2 - 2t^2 is reducible mod every prime
    assert!(ExtensionField::new(7, vec![1, 0, 0, 0], 0).is_err());
}

#[test]
fn parse_accepts_fractions_and_negatives() {
    let f = prime(11);
    assert_eq!(f.parse_elem("-1").unwrap(), 10);
    assert_eq!(f.parse_elem("1/2").unwrap(), 6);
    assert_eq!(f.format(&10), "-1");
    assert!(f.parse_elem("1/0").is_err());
    let q = RationalField::new(0);
    assert_eq!(q.format(&q.parse_elem("-6/4").unwrap()), "-3/2");
}
