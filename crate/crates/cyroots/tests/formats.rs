use cyroots::commands::{generate, GenKind};
use cyroots::format::{parse_field, parse_scalar, BimoduleDoc, QuiverDoc};
use cyroots_core::exactlin::Field;
use proptest::prelude::*;

fn kinds() -> Vec<GenKind> {
    vec![
        GenKind::Kronecker { s: 0, eps: 1 },
        GenKind::Kronecker { s: 1, eps: -1 },
        GenKind::TypeA { n: 2, d: 1, eps: 1 },
        GenKind::Beilinson { d: 2 },
        GenKind::A4,
    ]
}

#[test]
fn documents_round_trip() {
    for field in [Field::Rational, Field::Prime(7)] {
        for k in kinds() {
            let (q, b) = generate(&k, field).unwrap();
            let qs = serde_json::to_string_pretty(&q).unwrap();
            let bs = serde_json::to_string_pretty(&b).unwrap();
            let q2: QuiverDoc = serde_json::from_str(&qs).unwrap();
            let b2: BimoduleDoc = serde_json::from_str(&bs).unwrap();
            assert_eq!(serde_json::to_string_pretty(&q2).unwrap(), qs);
            assert_eq!(serde_json::to_string_pretty(&b2).unwrap(), bs);
            // through the algebraic objects and back
            let a = q2.to_algebra(field).unwrap();
            let u = b2.to_complex(&a).unwrap();
            assert_eq!(QuiverDoc::from_algebra(&a).unwrap(), q, "{:?}", k);
            assert_eq!(BimoduleDoc::from_complex(&u).unwrap(), b, "{:?}", k);
        }
    }
}

#[test]
fn parse_errors_carry_locations() {
    let (q, mut b) = generate(&GenKind::Kronecker { s: 0, eps: 1 }, Field::Rational).unwrap();
    let a = q.to_algebra(Field::Rational).unwrap();
    b.diff.get_mut("-1").unwrap()[0][0][0].left_path = vec!["z".into()];
    let e = b.to_complex(&a).unwrap_err().to_string();
    assert!(e.contains("diff[-1][0][0][0]") && e.contains("z"), "{}", e);

    let (_, mut b) = generate(&GenKind::Kronecker { s: 0, eps: 1 }, Field::Rational).unwrap();
    b.diff.get_mut("-1").unwrap()[0][0][0].left_path = vec![];
    assert!(b.to_complex(&a).is_err());

    let mut q2 = q.clone();
    q2.arrows[0].to = "7".into();
    assert!(q2.to_algebra(Field::Rational).unwrap_err().to_string().contains("arrows[0]"));
    assert!(parse_field("4").is_err());
    assert_eq!(parse_field("5").unwrap(), Field::Prime(5));
    assert!(parse_scalar(Field::Rational, "1/0", "x").is_err());
    assert!(parse_scalar(Field::Prime(3), "1/3", "x").is_err());
}

proptest! {
    #[test]
    fn coefficients_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let s = parse_scalar(Field::Rational, &format!("{}/{}", n, d), "c").unwrap();
        let t = s.to_string();
        prop_assert_eq!(parse_scalar(Field::Rational, &t, "c").unwrap().to_string(), t);
        let p = parse_scalar(Field::Prime(101), &format!("{}/{}", n, d % 100 + 1), "c").unwrap();
        prop_assert_eq!(parse_scalar(Field::Prime(101), &p.to_string(), "c").unwrap(), p);
    }
}
