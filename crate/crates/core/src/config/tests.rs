use super::*;
use crate::field::{PrimeField, DEFAULT_PRIMES};
use crate::poly::{default_names, Side};

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIMES[0]).unwrap()
}

fn cat(name: CatalogName) -> PointConfiguration<u64> {
    catalog(&fp(), name).unwrap()
}

#[test]
fn catalog_cardinalities() {
    assert_eq!(cat(CatalogName::B3).len(), 9);
    assert_eq!(cat(CatalogName::B4).len(), 16);
    assert_eq!(cat(CatalogName::D4).len(), 12);
    assert_eq!(cat(CatalogName::F4).len(), 24);
    assert_eq!(cat(CatalogName::H3).len(), 15);
    assert_eq!(cat(CatalogName::H4).len(), 60);
    assert_eq!(cat(CatalogName::ExtendedFermat).len(), 28);
    for m in 1..=8 {
        assert_eq!(cat(CatalogName::Fermat { m, augmented: false }).len(), 3 * m);
        assert_eq!(cat(CatalogName::Fermat { m, augmented: true }).len(), 3 * m + 3);
    }
}

#[test]
fn points_are_normalized() {
    let f = fp();
    for name in [CatalogName::B4, CatalogName::H3, CatalogName::H4, CatalogName::F4] {
        for p in cat(name).points {
            let last = p.iter().rev().find(|c| !f.is_zero(c)).unwrap();
            assert_eq!(*last, f.one());
        }
    }
}

#[test]
fn f4_is_b4_plus_q_points() {
    let f = fp();
    let f4 = cat(CatalogName::F4);
    let b4 = cat(CatalogName::B4);
    assert_eq!(&f4.points[..16], &b4.points[..]);
    for q in f4_extra_points(&f) {
        assert!(f4.contains(&normalize_point(&f, &q).unwrap()));
    }
}

#[test]
fn augmented_fermat_contains_plain_and_coordinate_points() {
    let f = fp();
    for m in [2, 4, 5] {
        let plain = cat(CatalogName::Fermat { m, augmented: false });
        let aug = cat(CatalogName::Fermat { m, augmented: true });
        assert!(plain.points.iter().all(|p| aug.contains(p)));
        for i in 0..3 {
            let mut e = vec![f.zero(); 3];
            e[i] = f.one();
            assert!(aug.contains(&e));
        }
    }
}

#[test]
fn fermat_points_lie_on_the_generators() {
    let f = fp();
    let syms = Symbols::new(default_names(3, Side::X));
    for m in [3, 4, 5] {
        let gens = [
            format!("y*z*(y^{m}-(-z)^{m})"),
            format!("z*x*(z^{m}-(-x)^{m})"),
            format!("x*y*(x^{m}-(-y)^{m})"),
            "x*y*z".to_string(),
        ];
        for g in gens {
            let g = parse_poly(&f, &g, &syms).unwrap();
            for p in cat(CatalogName::Fermat { m, augmented: true }).points {
                assert!(f.is_zero(&g.evaluate(&f, &p).unwrap()));
            }
        }
    }
}

#[test]
fn dual_points_examples() {
    let f = fp();
    let syms = Symbols::new(default_names(3, Side::X));
    let forms: Vec<_> = ["x-y", "z", "2x-2y", "x+y+z"]
        .iter()
        .map(|s| parse_poly(&f, s, &syms).unwrap())
        .collect();
    let z = dual_points(&f, "t", &forms).unwrap();
    assert_eq!(z.len(), 3);
    assert_eq!(z.points[0], vec![f.from_i64(-1), f.one(), f.zero()]);
    assert_eq!(z.points[1], vec![f.zero(), f.zero(), f.one()]);
    assert!(dual_points(&f, "t", &[MultiPoly::zero(3)]).is_err());
    let quad = parse_poly(&f, "x^2", &syms).unwrap();
    assert!(dual_points(&f, "t", &[quad]).is_err());
}

#[test]
fn dual_of_extended_fermat_factors_gives_28_points() {
    let f = fp();
    let syms = Symbols::new(default_names(4, Side::X));
    let zeta = f.primitive_root_of_unity(4).unwrap();
    let syms = syms.with_const("i", zeta);
    let mut forms = Vec::new();
    for v in ["x", "y", "z", "w"] {
        forms.push(parse_poly(&f, v, &syms).unwrap());
    }
    let names = ["x", "y", "z", "w"];
    for a in 0..4 {
        for b in a + 1..4 {
            for k in 0..4 {
                let t = format!("{}-i^{k}*{}", names[a], names[b]);
                forms.push(parse_poly(&f, &t, &syms).unwrap());
            }
        }
    }
    let z = dual_points(&f, "dual", &forms).unwrap();
    assert_eq!(z.len(), 28);
    let cat28 = cat(CatalogName::ExtendedFermat);
    assert!(z.points.iter().all(|p| cat28.contains(p)));
}

#[test]
fn h3_lines() {
    let f = fp();
    let h3 = cat(CatalogName::H3);
    let five = lines_through_config(&f, &h3, 5).unwrap();
    assert_eq!(five.len(), 6);
    assert!(five.iter().all(|l| l.points.len() == 5));
    let three = lines_through_config(&f, &h3, 3).unwrap();
    assert_eq!(three.len(), 16);
    assert_eq!(three.iter().filter(|l| l.points.len() == 3).count(), 10);

    // the six heavy lines are L_1..L_6
    let u = f.golden_ratio().unwrap();
    let syms = Symbols::new(default_names(3, Side::X)).with_const("u", u);
    for text in ["y-(u-1)z", "y+(u-1)z", "x-uz", "x+uz", "x-(u-1)y", "x+(u-1)y"] {
        let l = parse_poly(&f, text, &syms).unwrap();
        let coeffs = dual_points(&f, "l", &[l]).unwrap().points.remove(0);
        assert!(five.iter().any(|k| k.line == coeffs), "{text}");
    }
}

#[test]
fn generic_points_have_no_rich_lines() {
    let f = fp();
    let z = PointConfiguration::new(
        &f,
        "g",
        2,
        vec![
            vec![f.from_i64(3), f.from_i64(17), f.one()],
            vec![f.from_i64(-5), f.from_i64(2), f.one()],
            vec![f.from_i64(11), f.from_i64(-7), f.one()],
        ],
        Requirements::default(),
    )
    .unwrap();
    assert!(lines_through_config(&f, &z, 3).unwrap().is_empty());
    assert_eq!(lines_through_config(&f, &z, 2).unwrap().len(), 3);
}

/// Reflection in `r` maps every point of a root system to another point of it.
fn closed_under_reflections(f: &PrimeField, z: &PointConfiguration<u64>) -> bool {
    let dot = |a: &[u64], b: &[u64]| crate::linalg::dot(f, a, b);
    z.points.iter().all(|r| {
        let rr = dot(r, r);
        z.points.iter().all(|s| {
            let c = f.div(&f.mul(&f.from_i64(2), &dot(r, s)), &rr).unwrap();
            let img: Vec<u64> = s.iter().zip(r).map(|(a, b)| f.sub(a, &f.mul(&c, b))).collect();
            z.contains(&normalize_point(f, &img).unwrap())
        })
    })
}

#[test]
fn root_systems_are_reflection_closed() {
    let f = fp();
    for name in [CatalogName::B3, CatalogName::B4, CatalogName::D4, CatalogName::F4, CatalogName::H4] {
        assert!(closed_under_reflections(&f, &cat(name)), "{name:?}");
    }
    let fermat = cat(CatalogName::Fermat { m: 3, augmented: false });
    assert!(!closed_under_reflections(&f, &fermat.union(&f, "x", &cat(CatalogName::B3)).unwrap()));
}

#[test]
fn config_file_loading() {
    let f = fp();
    let file = ConfigFile {
        name: None,
        n: 2,
        zeta: None,
        points: vec![vec!["1".into(), "-1".into(), "0".into()], vec!["u".into(), "u^2".into(), "1".into()]],
    };
    let z = file.resolve(&f).unwrap();
    assert!(z.requires.golden);
    assert_eq!(z.len(), 2);

    let dup = ConfigFile {
        points: vec![vec!["1".into(), "-1".into(), "0".into()], vec!["-2".into(), "2".into(), "0".into()]],
        ..file.clone()
    };
    assert!(matches!(dup.resolve(&f), Err(Error::InvalidConfig(_))));

    let no_golden = PrimeField::new(7).unwrap();
    let err = file.resolve(&no_golden).unwrap_err();
    assert!(matches!(err, Error::Unavailable(_)));
    assert!(err.to_string().contains("golden"));

    let zeta_without_order = ConfigFile {
        points: vec![vec!["1".into(), "zeta".into(), "0".into()]],
        ..file.clone()
    };
    assert!(zeta_without_order.resolve(&f).is_err());

    let bad_len = ConfigFile { points: vec![vec!["1".into(), "0".into()]], ..file };
    assert!(bad_len.resolve(&f).is_err());
}

#[test]
fn shipped_28_point_file() {
    let f = fp();
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/extended_fermat_28.json");
    let z = load_config(&f, &path).unwrap();
    assert_eq!(z.len(), 28);
    assert_eq!(z.ambient, 3);
    let cat28 = cat(CatalogName::ExtendedFermat);
    assert!(z.points.iter().all(|p| cat28.contains(p)));
}

#[test]
fn emitted_file_round_trips() {
    let f = fp();
    let h3 = cat(CatalogName::H3);
    let file = h3.to_file(&f);
    let json = serde_json::to_string(&file).unwrap();
    let back: ConfigFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back.resolve(&f).unwrap().points, h3.points);
}

#[test]
fn catalog_names() {
    assert_eq!(CatalogName::parse("b4", None).unwrap(), CatalogName::B4);
    assert_eq!(
        CatalogName::parse("fermat3", Some(5)).unwrap(),
        CatalogName::Fermat { m: 5, augmented: true }
    );
    assert!(CatalogName::parse("fermat", None).is_err());
    assert!(matches!(CatalogName::parse("E8", None), Err(Error::UnknownConfig(_))));
    assert!(catalog(&fp(), CatalogName::Fermat { m: 0, augmented: false }).is_err());
}

#[test]
fn missing_constants_are_reported() {
    let f7 = PrimeField::new(7).unwrap();
    assert!(catalog(&f7, CatalogName::H3).is_err());
    assert!(catalog(&f7, CatalogName::Fermat { m: 5, augmented: false }).is_err());
    assert!(catalog(&f7, CatalogName::Fermat { m: 3, augmented: false }).is_ok());
}
