use std::path::PathBuf;

use proptest::prelude::*;

use emhd_core::diagnostics::NormSeries;
use emhd_core::experiments::TEnd;
use emhd_core::io::{
    load_config, parse_config, read_series, read_snapshot, series_from_reader, series_to_writer, write_series,
    write_snapshot, Snapshot, MAGIC,
};
use emhd_core::Error;

fn finite() -> impl Strategy<Value = f64> {
    prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
}

fn series_strategy() -> impl Strategy<Value = NormSeries> {
    (1usize..5, 0usize..12).prop_flat_map(|(cols, rows)| {
        prop::collection::vec(prop::collection::vec(finite(), cols), rows).prop_map(move |data| {
            let mut s = NormSeries::new((0..cols).map(|c| format!("q{c}")).collect());
            for (k, row) in data.into_iter().enumerate() {
                s.push(k as f64 * 0.1 + 1e-3, row).unwrap();
            }
            s
        })
    })
}

fn config_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn csv_roundtrip_is_bit_exact(s in series_strategy()) {
        let mut bytes = Vec::new();
        series_to_writer(&s, &mut bytes).unwrap();
        let back = series_from_reader(bytes.as_slice(), "memory").unwrap();
        prop_assert_eq!(back.columns(), s.columns());
        prop_assert_eq!(back.times().len(), s.times().len());
        for (r, q) in back.rows().iter().zip(s.rows()) {
            for (x, y) in r.iter().zip(q) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
        let mut again = Vec::new();
        series_to_writer(&back, &mut again).unwrap();
        prop_assert_eq!(again, bytes);
    }

    #[test]
    fn snapshot_roundtrip_is_bit_exact(
        n in 1u32..6,
        fields in 1usize..4,
        l in finite(),
        t in finite(),
        seed in prop::collection::vec(finite(), 1..36),
    ) {
        let cells = (n * n) as usize;
        let snap = Snapshot {
            grid_n: n,
            half_width: l,
            time: t,
            fields: (0..fields).map(|f| (0..cells).map(|i| seed[(i + f) % seed.len()]).collect()).collect(),
        };
        let bytes = snap.to_bytes().unwrap();
        prop_assert_eq!(&bytes[..8], MAGIC);
        prop_assert_eq!(bytes.len(), 36 + 8 * cells * fields);
        prop_assert_eq!(Snapshot::from_bytes(&bytes, "memory").unwrap(), snap);
    }
}

#[test]
fn snapshot_files_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.bin");
    let snap = Snapshot { grid_n: 2, half_width: 0.5, time: 0.25, fields: vec![vec![1.0, -0.0, f64::MIN_POSITIVE, 3.5]; 2] };
    write_snapshot(&snap, &path).unwrap();
    assert_eq!(read_snapshot(&path).unwrap(), snap);

    let mut bytes = std::fs::read(&path).unwrap();
    bytes.pop();
    std::fs::write(&path, &bytes).unwrap();
    assert!(matches!(read_snapshot(&path), Err(Error::Format { .. })));
}

#[test]
fn series_files_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    let mut s = NormSeries::new(vec!["a".into(), "b".into()]);
    s.push(0.0, vec![0.1, 1.0 / 3.0]).unwrap();
    s.push(0.5, vec![2.0f64.sqrt(), -1e-300]).unwrap();
    write_series(&s, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("time,a,b\n"));
    assert_eq!(read_series(&path).unwrap(), s);
}

#[test]
fn shipped_configs_validate() {
    for name in ["headline", "inviscid", "sweep", "quick"] {
        let cfg = load_config(&config_dir().join(format!("{name}.toml"))).unwrap();
        assert!(cfg.out_dir.is_some(), "{name}");
    }
    let inviscid = load_config(&config_dir().join("inviscid.toml")).unwrap();
    assert_eq!(inviscid.params.mu, 0.0);
    assert_eq!(inviscid.t_end, TEnd::Explicit(0.1));
    let sweep = load_config(&config_dir().join("sweep.toml")).unwrap();
    assert_eq!(sweep.sweep.n_osc, Some(vec![8, 16, 32]));
}

#[test]
fn beta_outside_window_cites_it() {
    let err = parse_config("[model]\nbeta = 3.6\n").unwrap_err();
    let Error::Config(list) = err else { panic!("{err}") };
    assert!(list.iter().any(|m| m.contains("3 < beta < 4 - 2*alpha")), "{list:?}");
    assert!(parse_config("[model]\nbeta = 3.0\n").is_err());
}

#[test]
fn unknown_keys_all_listed() {
    let err = parse_config("[model]\nbeta = 3.2\ngamma = 1\n[grid]\nspacing = 2\n[output]\nx = 1\n").unwrap_err();
    let Error::Config(list) = err else { panic!("{err}") };
    assert!(list.iter().any(|m| m.contains("gamma")));
    assert!(list.iter().any(|m| m.contains("spacing")));
    assert!(list.iter().any(|m| m.contains("[output]")));
}

#[test]
fn missing_file_is_a_validation_error() {
    let err = load_config(&config_dir().join("absent.toml")).unwrap_err();
    assert!(err.is_validation());
}
