use std::io::Write;

use bottcheck::bottcases::{
    builtin_registry, evaluate_case, load_registry, report, serialize_registry, CaseNumerics, CaseRecord, Conclusion,
    Geometry, RegistryError, ThreefoldFields,
};
use bottcheck::exact::Rational;
use bottcheck::theorems::PlaneBundleInput;
use proptest::prelude::*;

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

#[test]
fn empty_file_is_empty_registry() {
    let file = write_temp("");
    assert!(load_registry(file.path()).unwrap().is_empty());
    assert!(report(&[]).is_empty());
}

#[test]
fn conic_without_d_is_rejected() {
    let file = write_temp("[[case]]\nid = \"c\"\ngeometry = \"conicBundle\"\nh = 2\nprovenance = \"x\"\n");
    match load_registry(file.path()) {
        Err(RegistryError::Field { id, field, .. }) => assert_eq!((id.as_str(), field.as_str()), ("c", "d")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn builtin_file_round_trip() {
    let text = serialize_registry(&builtin_registry());
    let file = write_temp(&text);
    let loaded = load_registry(file.path()).unwrap();
    assert_eq!(loaded, builtin_registry());
    assert_eq!(serialize_registry(&loaded), text);
}

#[test]
fn builtin_obstructions_have_nonnegative_h() {
    for case in builtin_registry() {
        let Ok(v) = evaluate_case(&case) else { continue };
        let coeff = v.obstruction.coeff(&bottcheck::chern::Symbol::Hodge);
        assert!(coeff >= Rational::from_integer(0.into()), "{}", case.id);
        assert!(v.obstruction.symbols().all(|s| *s == bottcheck::chern::Symbol::Hodge));
        let expected = if v.obstruction.is_zero() {
            Conclusion::NeedsH0Check
        } else {
            Conclusion::FailsByNegativeChi
        };
        assert_eq!(v.conclusion, expected, "{}", case.id);
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn threefold_fields() -> impl Strategy<Value = ThreefoldFields> {
    (
        proptest::option::of(0u64..30),
        proptest::option::of(rational()),
        proptest::option::of(rational()),
        proptest::option::of(rational()),
        proptest::option::of(rational()),
        proptest::option::of(rational()),
    )
        .prop_map(|(h, c13, c12h, c1h2, c2h, h3)| ThreefoldFields {
            h,
            c13,
            c12h,
            c1h2,
            c2h,
            h3,
        })
}

fn record() -> impl Strategy<Value = (Geometry, CaseNumerics, Option<i64>)> {
    let table = (prop_oneof![Just(Geometry::Table8), Just(Geometry::Table9), Just(Geometry::Table75No1)], threefold_fields())
        .prop_map(|(g, f)| (g, CaseNumerics::Threefold(f), None));
    let dp6 = (proptest::option::of(0u64..30), proptest::option::of(rational())).prop_map(|(h, c13)| {
        let f = ThreefoldFields {
            h,
            c13,
            ..Default::default()
        };
        (Geometry::DelPezzoFib6, CaseNumerics::Threefold(f), None)
    });
    let conic = (proptest::option::of(rational()), 1i64..20).prop_map(|(c13, d)| {
        let f = ThreefoldFields {
            c13,
            ..Default::default()
        };
        (Geometry::ConicBundle, CaseNumerics::Threefold(f), Some(d))
    });
    let divisor = (
        prop_oneof![Just(Geometry::DelPezzoFib8Small), Just(Geometry::DelPezzoFib8Divisorial)],
        proptest::option::of((-3i64..4, -3i64..4, -3i64..4)),
        -3i64..4,
    )
        .prop_map(|(g, t, k)| {
            let twists = t.map(|(x, p, q)| [x, p, x, q]);
            (g, CaseNumerics::Divisor { twists, k }, None)
        });
    let plane = (-5i64..6, -5i64..6)
        .prop_map(|(c1, c2)| (Geometry::P1BundleOverPlane, CaseNumerics::Plane(PlaneBundleInput::new(c1, c2)), None));
    prop_oneof![table, dp6, conic, divisor, plane]
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(items in proptest::collection::vec(record(), 0..8)) {
        let records: Vec<CaseRecord> = items
            .into_iter()
            .enumerate()
            .map(|(i, (geometry, numerics, d))| CaseRecord {
                id: format!("case-{i}"),
                geometry,
                numerics,
                d,
                provenance: format!("source \"{i}\""),
            })
            .collect();
        let text = serialize_registry(&records);
        let file = write_temp(&text);
        prop_assert_eq!(load_registry(file.path()).unwrap(), records.clone());

        let mut shuffled = records.clone();
        shuffled.reverse();
        prop_assert_eq!(report(&shuffled), report(&records));
    }
}
