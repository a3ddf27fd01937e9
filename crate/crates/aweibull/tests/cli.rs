use std::process::{Command, Output};

use aweibull::core::asymmetric::{asym_weibull2_table, AsymWeibullIILaw};
use aweibull::core::law::{Law, WeibullFamilyLaw};
use aweibull::core::stats::{ks_one_sample, EmpiricalSample};
use aweibull::core::weibull::WeibullLaw;
use aweibull::report::{Format, Report, Value};

fn aweibull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aweibull"))
        .args(args)
        .env_remove("AWEIBULL_SEED")
        .output()
        .expect("binary runs")
}

fn csv(out: &Output) -> Report {
    Report::from_csv(&out.stdout).expect("parseable csv")
}

fn column(r: &Report, name: &str) -> Vec<Value> {
    let i = r.column(name).expect("column present");
    r.records.iter().map(|row| row[i].clone()).collect()
}

fn floats(r: &Report, name: &str) -> Vec<f64> {
    column(r, name).iter().map(|v| v.as_f64().expect("number")).collect()
}

#[test]
fn sample_is_reproducible_and_sized() {
    let args = ["sample", "--law", "weibull", "--gamma", "0.5", "--n", "1000", "--seed", "7"];
    let a = aweibull(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = aweibull(&args);
    assert_eq!(a.stdout, b.stdout);
    let r = csv(&a);
    assert_eq!(r.records.len(), 1000);
    assert_eq!(r.metadata.law, "weibull");
    assert_eq!(r.metadata.seed, 7);
    assert!(floats(&r, "value").iter().all(|&v| v > 0.0));
}

#[test]
fn seed_from_environment() {
    let flag = aweibull(&["sample", "--law", "stable", "--gamma", "0.5", "--n", "50", "--seed", "11"]);
    let env = Command::new(env!("CARGO_BIN_EXE_aweibull"))
        .args(["sample", "--law", "stable", "--gamma", "0.5", "--n", "50"])
        .env("AWEIBULL_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(flag.stdout, env.stdout);
    let other = aweibull(&["sample", "--law", "stable", "--gamma", "0.5", "--n", "50", "--seed", "12"]);
    assert_ne!(flag.stdout, other.stdout);
}

#[test]
fn second_kind_draws_follow_the_law() {
    let out = aweibull(&[
        "sample", "--law", "asym-weibull2", "--mu", "1", "--sigma", "1", "--gamma", "0.5", "--n", "20000", "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = EmpiricalSample::new(floats(&csv(&out), "value")).unwrap();
    let table = asym_weibull2_table(AsymWeibullIILaw::new(1.0, 1.0, 0.5).unwrap(), 400, 1e-7).unwrap();
    let r = ks_one_sample(&s, |x| table.cdf(x));
    assert!(r.pass, "KS {} threshold {}", r.statistic, r.threshold);
}

#[test]
fn invalid_parameter_exits_2_naming_the_constraint() {
    let out = aweibull(&["sample", "--law", "weibull", "--gamma", "-1", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma > 0"));
    let out = aweibull(&["sample", "--law", "weibull", "--gamma", "0.5", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = aweibull(&["cdf", "--law", "weibull", "--gamma", "0.5", "--grid", "0:1:1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = aweibull(&["quantile", "--law", "weibull", "--gamma", "0.5", "--grid", "0:1:3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = aweibull(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tabulations_match_the_library() {
    let law = Law::from(WeibullFamilyLaw::OneSided(WeibullLaw::new(0.7).unwrap()));
    let cdf = csv(&aweibull(&["cdf", "--law", "weibull", "--gamma", "0.7", "--grid", "0:3:7"]));
    let pdf = csv(&aweibull(&["pdf", "--law", "weibull", "--gamma", "0.7", "--grid", "0:3:7"]));
    let q = csv(&aweibull(&["quantile", "--law", "weibull", "--gamma", "0.7", "--grid", "0.1:0.9:5"]));
    for (x, y) in floats(&cdf, "x").into_iter().zip(floats(&cdf, "cdf")) {
        assert_eq!(y, law.cdf(x).unwrap());
    }
    for (x, y) in floats(&pdf, "x").into_iter().zip(floats(&pdf, "pdf")) {
        assert_eq!(y, law.pdf(x).unwrap());
    }
    let ps = floats(&q, "p");
    assert_eq!(ps.len(), 5);
    for (p, x) in ps.into_iter().zip(floats(&q, "quantile")) {
        assert_eq!(x, law.quantile(p).unwrap());
    }
}

#[test]
fn json_output_to_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cdf.json");
    let out = aweibull(&[
        "cdf", "--law", "asym-weibull1", "--a1", "0.5", "--a2", "2", "--gamma", "0.5", "--grid", "-2:2:9", "--format",
        "json", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let bytes = std::fs::read(&path).unwrap();
    let r = Report::from_json(&bytes).unwrap();
    assert_eq!(r.records.len(), 9);
    assert_eq!(r.metadata.law, "asym-weibull1");
    assert_eq!(r.render(Format::Json).unwrap(), bytes);
}

#[test]
fn every_command_output_round_trips() {
    let commands: [&[&str]; 6] = [
        &["sample", "--law", "symmetric-stable", "--alpha", "1.2", "--n", "20"],
        &["cdf", "--law", "stable-reciprocal", "--gamma", "0.6", "--grid", "0.1:5:4"],
        &["pdf", "--law", "asym-weibull2", "--mu", "-1", "--sigma", "2", "--gamma", "0.8", "--grid", "-3:3:4"],
        &["moments", "--law", "two-sided-weibull", "--gamma", "0.5", "--beta", "0.5,1"],
        &["verify", "--only", "w1-product", "--n", "2000"],
        &["randsum", "--gamma", "1", "--k", "16", "--n", "2000"],
    ];
    for args in commands {
        for (flag, format) in [("csv", Format::Csv), ("json", Format::Json)] {
            let mut full = args.to_vec();
            full.extend(["--format", flag]);
            let out = aweibull(&full);
            assert_eq!(out.status.code(), Some(0), "{full:?}: {}", String::from_utf8_lossy(&out.stderr));
            let r = Report::parse(format, &out.stdout).unwrap();
            assert_eq!(r.render(format).unwrap(), out.stdout, "{full:?}");
        }
    }
}

#[test]
fn moments_of_infinite_mean_law() {
    let r = csv(&aweibull(&["moments", "--law", "stable", "--gamma", "0.5", "--beta", "0.25"]));
    let values = column(&r, "value");
    assert_eq!(values[0], Value::Null);
    assert!(values[1].as_f64().unwrap().is_finite());
}

#[test]
fn verify_default_run_passes() {
    let out = aweibull(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = csv(&out);
    assert!(r.records.len() >= 20);
    assert!(column(&r, "pass").iter().all(|p| p.as_bool() == Some(true)));
    assert!(column(&r, "anchor").iter().all(|a| !a.as_str().unwrap().is_empty()));
}

#[test]
fn verify_only_selects_a_group() {
    let r = csv(&aweibull(&["verify", "--only", "mixed-exponential"]));
    let groups = column(&r, "group");
    assert_eq!(groups.len(), 2);
    assert!(groups.iter().all(|g| g.as_str() == Some("mixed-exponential")));
    let out = aweibull(&["verify", "--only", "no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let args = ["verify", "--only", "stable,asym-first,random-sum", "--seed", "5"];
    let a = aweibull(&args);
    let b = aweibull(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let single = Command::new(env!("CARGO_BIN_EXE_aweibull"))
        .args(args)
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, single.stdout);
}

#[test]
fn verify_failure_exits_1() {
    // one replicate: the KS distance to a continuous law is at least 1/2
    let out = aweibull(&["verify", "--only", "random-sum-laplace", "--ensemble", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = csv(&out);
    assert_eq!(column(&r, "pass"), vec![Value::Bool(false)]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL random-sum-laplace"));
}

#[test]
fn randsum_reports_laplace_comparison_at_gamma_one() {
    let r = csv(&aweibull(&["randsum", "--gamma", "1", "--mu", "1", "--k", "64", "--n", "5000"]));
    assert_eq!(r.records.len(), 1);
    let laplace = column(&r, "laplace_ks")[0].as_f64().expect("laplace column filled");
    assert!(laplace < 0.05, "{laplace}");
    let r = csv(&aweibull(&["randsum", "--gamma", "0.5", "--k", "64", "--n", "2000"]));
    assert_eq!(column(&r, "laplace_ks")[0], Value::Null);
}

#[test]
fn randsum_sweep_gives_one_record_per_k() {
    let r = csv(&aweibull(&["randsum", "--gamma", "0.5", "--sweep", "4,16,64", "--n", "2000"]));
    let ks: Vec<f64> = floats(&r, "k");
    assert_eq!(ks, vec![4.0, 16.0, 64.0]);
    for bad in ["4,x", "4,,16", "0", ""] {
        let out = aweibull(&["randsum", "--sweep", bad, "--n", "2000"]);
        assert_eq!(out.status.code(), Some(2), "sweep {bad:?}");
    }
    let out = aweibull(&["randsum", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
}
