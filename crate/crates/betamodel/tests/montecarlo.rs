use betamodel::montecarlo::{
    build_beta, empirical_distribution, run_experiment, run_homogeneity_experiment,
    run_pair_experiment, BetaRule, ExperimentMethod, ExperimentSpec, Heterogeneity,
};

fn pair_spec(n: usize, scale: Heterogeneity, reps: usize, seed: u64) -> ExperimentSpec {
    let mut spec = ExperimentSpec::new(n, scale);
    spec.pairs = vec![(1, n)];
    spec.methods = vec![ExperimentMethod::Pair];
    spec.replications = reps;
    spec.seed = seed;
    spec
}

#[test]
fn single_replication_is_deterministic() {
    let spec = pair_spec(50, Heterogeneity::LogLog, 1, 17);
    let a = run_pair_experiment(&spec).unwrap();
    let b = run_pair_experiment(&spec).unwrap();
    let cell = a.cell(ExperimentMethod::Pair, Some((1, 50))).unwrap();
    assert!(cell.rejections <= 1);
    assert_eq!(cell.valid + a.failed, 1);
    assert_eq!(a.cells, b.cells);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let mut spec = pair_spec(60, Heterogeneity::SqrtLog, 24, 5);
    spec.methods.push(ExperimentMethod::Cauchy);
    spec.methods.push(ExperimentMethod::Lrt);
    spec.keep_replications = true;
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| run_experiment(&spec).unwrap())
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.cells, b.cells);
    assert_eq!(a.per_replication, b.per_replication);
    assert_eq!(a.replication_csv(), b.replication_csv());
}

#[test]
fn power_grows_with_heterogeneity() {
    let rates: Vec<f64> = [
        Heterogeneity::Zero,
        Heterogeneity::LogLog,
        Heterogeneity::SqrtLog,
    ]
    .into_iter()
    .map(|scale| {
        let report = run_pair_experiment(&pair_spec(100, scale, 100, 11)).unwrap();
        report
            .proportion(ExperimentMethod::Pair, Some((1, 100)))
            .unwrap()
    })
    .collect();
    // Two binomial standard errors at 100 replications.
    for w in rates.windows(2) {
        assert!(w[1] + 0.1 >= w[0], "{rates:?}");
    }
    assert!(rates[2] > rates[0] + 0.3, "{rates:?}");
}

#[test]
fn cauchy_beats_lrt_near_full_homogeneity() {
    let mut spec = ExperimentSpec::new(100, Heterogeneity::LogLog);
    spec.rule = BetaRule::HomogeneousTail { r: 99 };
    spec.methods = vec![ExperimentMethod::Cauchy, ExperimentMethod::Lrt];
    spec.replications = 100;
    spec.seed = 2001;
    let report = run_homogeneity_experiment(&spec).unwrap();
    let cauchy = report.proportion(ExperimentMethod::Cauchy, None).unwrap();
    let lrt = report.proportion(ExperimentMethod::Lrt, None).unwrap();
    assert!(cauchy >= lrt, "cauchy {cauchy} lrt {lrt}");
}

#[test]
fn experiment_kind_checks() {
    let spec = pair_spec(30, Heterogeneity::Zero, 5, 1);
    assert!(run_homogeneity_experiment(&spec).is_err());
    let mut homog = spec.clone();
    homog.methods = vec![ExperimentMethod::Cauchy];
    assert!(run_pair_experiment(&homog).is_err());
    homog.methods.clear();
    assert!(run_experiment(&homog).is_err());
}

#[test]
fn proportions_are_proportions() {
    let mut spec = pair_spec(40, Heterogeneity::Fixed(1.0), 30, 3);
    spec.methods.push(ExperimentMethod::Cauchy);
    let report = run_experiment(&spec).unwrap();
    assert_eq!(report.cells.len(), 2);
    for cell in &report.cells {
        assert_eq!(cell.valid + report.failed, 30);
        assert!((0.0..=1.0).contains(&cell.proportion));
        assert_eq!(cell.proportion, cell.rejections as f64 / cell.valid as f64);
    }
}

#[test]
fn failed_fits_leave_the_denominator() {
    // Top nodes connect to everyone, so no replication has a finite MLE.
    let spec = pair_spec(30, Heterogeneity::Fixed(12.0), 10, 3);
    let report = run_pair_experiment(&spec).unwrap();
    assert_eq!(report.failed, 10);
    let cell = &report.cells[0];
    assert_eq!(cell.valid, 0);
    assert!(cell.proportion.is_nan());
}

#[test]
fn alternative_shift_is_visible() {
    let mut spec = ExperimentSpec::new(200, Heterogeneity::SqrtLog);
    spec.replications = 150;
    spec.seed = 4;
    let dist = empirical_distribution(&spec, (1, 200)).unwrap();
    assert_eq!(dist.samples.len() + dist.failed, 150);
    assert_eq!(dist.reference_mean, dist.mean);
    let se = dist.std_dev / (dist.samples.len() as f64).sqrt();
    assert!(dist.mean < -2.58 * se, "mean {} se {se}", dist.mean);
    let beta = build_beta(&spec);
    assert!(beta.as_slice()[0] < beta.as_slice()[199]);
}
