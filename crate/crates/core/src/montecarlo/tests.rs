use super::*;
use crate::randsrc::gaussian;
use crate::specfun::{zeros, ZeroKind};

fn soft(model: SoftModel, n: usize, beta: Beta, a: f64) -> Experiment {
    Experiment::new(
        ExperimentKind::SoftEdgeMatrix { model, n, beta, a, k: 1 },
        20,
        42,
    )
}

fn hard(model: HardModel, n: usize, beta: Beta, a: f64, b: f64) -> Experiment {
    Experiment::new(
        ExperimentKind::HardEdgeMatrix { model, n, beta, a, b, k: 1 },
        20,
        42,
    )
}

#[test]
fn scaled_and_direct_statistics_agree() {
    let beta = Beta::Finite(2.0);
    let exps = [
        soft(SoftModel::Hermite, 100, beta, 0.0),
        soft(SoftModel::LaguerreL, 100, beta, 0.5),
        soft(SoftModel::LaguerreM, 100, beta, 1.5),
        hard(HardModel::LaguerreL, 100, beta, 0.5, 0.0),
        hard(HardModel::LaguerreM, 100, beta, 1.5, 0.0),
        hard(HardModel::Jacobi, 100, beta, 0.5, 1.0),
    ];
    for e in &exps {
        let s = Sampler::new(e).unwrap();
        for i in 0..3 {
            let (d, c) = (s.sample(i).unwrap(), s.sample_scaled(i).unwrap());
            assert!((d - c).abs() <= 1e-9 * d.abs().max(1.0), "{:?}: {d} vs {c}", e.kind);
        }
    }
}

#[test]
fn zero_temperature_statistics() {
    let e = soft(SoftModel::Hermite, 200, Beta::Infinite, 0.0);
    let s = Sampler::new(&e).unwrap();
    assert_eq!(s.sample(0).unwrap(), s.sample(7).unwrap());
    let r = run_mc(&e, 2, &Bins::default()).unwrap();
    assert_eq!(r.histogram.sd, 0.0);
    assert_eq!(r.histogram.counts, vec![20]);

    let j = run_experiment_once(&hard(HardModel::Jacobi, 500, Beta::Infinite, 0.0, 0.0), 0).unwrap();
    let xi = zeros(ZeroKind::BesselJ(0.0), 1).unwrap().zeros[0];
    assert!((j - xi).abs() < 5e-3, "{j}");
}

#[test]
fn worker_count_does_not_change_samples() {
    let mut exps = vec![
        soft(SoftModel::Hermite, 300, Beta::Finite(2.0), 0.0),
        hard(HardModel::Jacobi, 100, Beta::Finite(1.0), 0.0, 0.0),
    ];
    let cfg = RayleighRitzConfig {
        basis_size: 10,
        mesh: 0.1,
        right: 20.0,
        ..RayleighRitzConfig::airy(Beta::Finite(2.0))
    };
    exps.push(Experiment::new(ExperimentKind::AiryRr { config: cfg, k: 1 }, 30, 5));
    for e in &exps {
        let one = run_mc(e, 1, &Bins::default()).unwrap();
        let eight = run_mc(e, 8, &Bins::default()).unwrap();
        let bits = |r: &McResult| r.raw.iter().map(|(i, v)| (*i, v.to_bits())).collect::<Vec<_>>();
        assert_eq!(bits(&one), bits(&eight));
        assert_eq!(one.histogram, eight.histogram);
    }
}

#[test]
fn failure_tolerance() {
    let e = Experiment::new(
        ExperimentKind::SoftEdgeMatrix {
            model: SoftModel::Hermite,
            n: 10,
            beta: Beta::Infinite,
            a: 0.0,
            k: 1,
        },
        2000,
        0,
    );
    let fail = || Err(crate::Error::NonConvergence("test".into()));
    let mut rs: Vec<Result<f64>> = (0..2000).map(|i| Ok(i as f64)).collect();
    rs[17] = fail();
    let r = collect(&e, rs, &Bins::Count(10)).unwrap();
    assert_eq!(r.failures.len(), 1);
    assert_eq!(r.failures[0].index, 17);
    assert_eq!(r.histogram.n_total, 1999);

    let mut rs: Vec<Result<f64>> = (0..1000).map(|i| Ok(i as f64)).collect();
    rs[3] = fail();
    rs[9] = Ok(f64::NAN);
    match collect(&e, rs, &Bins::default()) {
        Err(crate::Error::TooManyFailures { failed, total, indices }) => {
            assert_eq!((failed, total, indices), (2, 1000, vec![3, 9]));
        }
        other => panic!("{other:?}"),
    }
    // usage errors are not per-sample failures
    let rs = vec![Ok(1.0), Err(crate::error::invalid("bad"))];
    assert!(collect(&e, rs, &Bins::default()).unwrap_err().is_usage());
}

#[test]
fn validation() {
    let mut e = soft(SoftModel::Hermite, 10, Beta::Finite(2.0), 0.0);
    e.samples = 0;
    assert!(run_mc(&e, 1, &Bins::default()).unwrap_err().is_usage());
    let e = Experiment::new(
        ExperimentKind::SoftEdgeMatrix { model: SoftModel::Hermite, n: 5, beta: Beta::Infinite, a: 0.0, k: 6 },
        1,
        0,
    );
    assert!(Sampler::new(&e).is_err());
}

#[test]
fn ks_distance_cases() {
    let a = gaussian(StreamKey::new(1, 0), 10_000);
    let b = gaussian(StreamKey::new(1, 1), 10_000);
    assert_eq!(ks_distance(&a, &a).unwrap(), 0.0);
    let shifted: Vec<f64> = a.iter().map(|x| x + 100.0).collect();
    assert_eq!(ks_distance(&a, &shifted).unwrap(), 1.0);
    // 99% critical value: 1.63 sqrt(2/10^4) = 0.023
    assert!(ks_distance(&a, &b).unwrap() <= 0.03);
    assert!(ks_distance(&a, &[]).is_err());
    // ties are handled jointly
    assert_eq!(ks_distance(&[1.0, 1.0, 2.0], &[1.0, 2.0, 2.0]).unwrap(), 1.0 / 3.0);
}

#[test]
fn histogram_binning() {
    let p = Provenance { seed: 0, digest: "x".into() };
    let v = gaussian(StreamKey::new(2, 0), 5000);
    let h = histogram(&v, &Bins::FreedmanDiaconis, p.clone()).unwrap();
    assert_eq!(h.n_total, 5000);
    assert!(h.edges.windows(2).all(|w| w[1] > w[0]));
    // FD width 2 IQR n^{-1/3} = 2 * 1.349 / 17.1 for N(0,1)
    let w = h.edges[1] - h.edges[0];
    assert!((w - 0.158).abs() < 0.01, "{w}");
    let h = histogram(&[0.0, 1.0, 2.0, 3.0], &Bins::Count(3), p.clone()).unwrap();
    assert_eq!(h.counts, vec![1, 1, 2]);
    let h = histogram(&[0.0, 1.0, 5.0], &Bins::Edges(vec![0.5, 1.5, 2.5]), p.clone()).unwrap();
    assert_eq!((h.counts.clone(), h.outside), (vec![1, 0], 2));
    assert!(histogram(&[], &Bins::Count(3), p.clone()).is_err());
    assert!(histogram(&[1.0], &Bins::Edges(vec![1.0, 1.0]), p).is_err());
}

#[test]
fn digest_ignores_seed() {
    let a = soft(SoftModel::Hermite, 10, Beta::Finite(2.0), 0.0);
    let mut b = a.clone();
    b.seed = 9;
    assert_eq!(a.digest(), b.digest());
    assert_eq!(a.digest().len(), 16);
    let c = soft(SoftModel::Hermite, 11, Beta::Finite(2.0), 0.0);
    assert_ne!(a.digest(), c.digest());
    let s = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<Experiment>(&s).unwrap(), a);
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let e = hard(HardModel::LaguerreL, 50, Beta::Finite(2.0), 0.0, 0.0);
    let r = run_mc(&e, 0, &Bins::Count(7)).unwrap();
    let stem = format!("{}_{}", e.digest(), e.seed);

    let p = export(&r, dir.path(), ExportFormat::RawCsv).unwrap();
    assert_eq!(p.file_name().unwrap().to_str().unwrap(), format!("{stem}.csv"));
    let raw = read_raw_csv(&p).unwrap();
    assert_eq!(raw, r.raw);

    let p = export(&r, dir.path(), ExportFormat::HistogramCsv).unwrap();
    let (edges, counts) = read_histogram_csv(&p).unwrap();
    assert_eq!((edges, counts), (r.histogram.edges.clone(), r.histogram.counts.clone()));

    let p = export(&r, dir.path(), ExportFormat::Json).unwrap();
    assert_eq!(p.file_name().unwrap().to_str().unwrap(), format!("{stem}.json"));
    let s = read_sidecar(&p).unwrap();
    assert_eq!(s.experiment, e);
    assert_eq!(s.histogram, r.histogram);
    assert_eq!(s.samples_ok, 20);

    assert!(matches!(
        read_sidecar(&dir.path().join("missing.json")),
        Err(crate::Error::Io(_))
    ));
}
