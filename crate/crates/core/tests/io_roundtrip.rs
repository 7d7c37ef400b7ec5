use proptest::prelude::*;
use rdual_core::io::{parse_sequence, parse_sequence_str, FieldTag, SequenceFile};
use rdual_core::linalg::{Matrix, Scalar};
use rdual_core::random::{generate_sequence, GenerateKind, GenerateSpec};
use rdual_core::VectorSeq;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        Just(0.0),
        Just(-0.0),
        -1e3..1e3f64,
    ]
}

fn sequence(real: bool) -> impl Strategy<Value = VectorSeq> {
    (1usize..=6).prop_flat_map(move |n| {
        proptest::collection::vec((finite(), finite()), n * n).prop_map(move |entries| {
            let m = Matrix::from_fn(n, n, |i, j| {
                let (re, im) = entries[j * n + i];
                Scalar::new(re, if real { 0.0 } else { im })
            });
            VectorSeq::new(m).unwrap()
        })
    })
}

fn same_bits(a: &VectorSeq, b: &VectorSeq) -> bool {
    a.synthesis()
        .as_slice()
        .iter()
        .zip(b.synthesis().as_slice())
        .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits())
}

proptest! {
    #[test]
    fn complex_round_trip_is_bit_exact(s in sequence(false)) {
        let text = SequenceFile::from_seq(&s, None).to_json();
        let back = parse_sequence_str(&text).unwrap();
        prop_assert!(same_bits(&s, &back));
    }

    #[test]
    fn real_round_trip_is_bit_exact(s in sequence(true)) {
        let file = SequenceFile::from_seq(&s, Some("r".into()));
        prop_assert_eq!(file.field_tag, FieldTag::Real);
        let back = parse_sequence_str(&file.to_json()).unwrap();
        prop_assert!(same_bits(&s, &back));
    }
}

#[test]
fn round_trip_through_a_file() {
    let s = generate_sequence(&GenerateSpec {
        n: 5,
        kind: GenerateKind::Spectrum {
            singular_values: vec![3.0, 2.0, 1.0, 0.5, 0.0],
        },
        seed: 42,
    })
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, SequenceFile::from_seq(&s, None).to_json()).unwrap();
    let back = parse_sequence(&path).unwrap();
    assert!(same_bits(&s, &back));
}

#[test]
fn missing_file_is_an_io_error() {
    let err = parse_sequence(std::path::Path::new("/nonexistent/seq.json")).unwrap_err();
    assert!(err.to_string().contains("/nonexistent/seq.json"));
}
