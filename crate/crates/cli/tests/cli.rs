use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sobolev_core::fourier::{random_band_limited, s_p_norm, AmplitudeLaw, VectorFunction};
use sobolev_core::group::{make_group, GroupSpec};
use sobolev_core::sobolev::{embedding_constant_c, h_s_norm, l_p_norm, sup_norm, WeightSequence};

const SMALL: &str = r#"{
  "groups": [
    { "kind": "cyclic", "n": 4 },
    { "kind": "su2", "band": 2, "weights": "canonical" }
  ],
  "batch_size": 4,
  "extra_samples": 16
}"#;

struct Sandbox {
    dir: tempfile::TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Sandbox {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_sobolev"))
            .args(args)
            .current_dir(self.dir.path())
            .env_remove("SOBOLEV_CONFIG")
            .output()
            .unwrap()
    }

    fn read(&self, name: &str) -> Vec<u8> {
        std::fs::read(self.path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
    }

    fn json(&self, name: &str) -> Value {
        serde_json::from_slice(&self.read(name)).unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn spectra_constant_function_has_only_the_trivial_block() {
    let sb = Sandbox::new();
    let cfg = sb.write("c.json", SMALL);
    let o = sb.run(&[
        "spectra",
        "--config",
        p(&cfg),
        "--group",
        "Z4",
        "--source",
        "constant",
        "--out",
        "o",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let file = sb.json("o/spectra_z4.json");
    let blocks = file["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 4);
    assert_eq!(blocks[0]["label"], "0");
    let v: Vec<Vec<f64>> = serde_json::from_value(blocks[0]["entries"][0][0].clone()).unwrap();
    assert_eq!(v, vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![3.0, 0.0]]);
    for b in &blocks[1..] {
        for z in b["entries"][0][0].as_array().unwrap() {
            let z: Vec<f64> = serde_json::from_value(z.clone()).unwrap();
            assert!(z[0].abs() < 1e-15 && z[1].abs() < 1e-15, "{z:?}");
        }
    }
    assert!(!sb.path("o/spectra_su2_l_2.json").exists());
}

#[test]
fn spectra_random_is_deterministic_and_round_trips() {
    let sb = Sandbox::new();
    let cfg = sb.write("c.json", SMALL);
    let args = |out: &'static str| {
        vec![
            "spectra",
            "--config",
            p(&cfg),
            "--group",
            "su2(L=2)",
            "--out",
            out,
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()
    };
    let a = args("a");
    let b = args("b");
    for v in [&a, &b] {
        let v: Vec<&str> = v.iter().map(String::as_str).collect();
        assert_eq!(code(&sb.run(&v)), 0);
    }
    let first = sb.read("a/spectra_su2_l_2.json");
    assert_eq!(first, sb.read("b/spectra_su2_l_2.json"));

    let input = sb.path("a/spectra_su2_l_2.json");
    let o = sb.run(&[
        "spectra",
        "--config",
        p(&cfg),
        "--source",
        "file",
        "--input",
        p(&input),
        "--out",
        "c",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(sb.read("c/spectra_su2_l_2.json"), first);

    let stdout = String::from_utf8(o.stdout).unwrap();
    let printed: f64 = stdout.split('\t').nth(2).unwrap().parse().unwrap();
    let g = make_group(&GroupSpec::su2(2)).unwrap();
    let c = random_band_limited(
        sobolev_core::verify::function_seed(20_240_917, 1, 0),
        &g,
        3,
        AmplitudeLaw::Gaussian,
    );
    assert_eq!(printed.to_bits(), s_p_norm(&c, 2.0).unwrap().to_bits());
}

#[test]
fn spectra_input_errors() {
    let sb = Sandbox::new();
    let cfg = sb.write("c.json", SMALL);
    let o = sb.run(&[
        "spectra",
        "--config",
        p(&cfg),
        "--source",
        "file",
        "--input",
        "missing.json",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("missing.json"));

    // A band-2 file read against a configuration whose su2 window has band 1.
    assert_eq!(
        code(&sb.run(&[
            "spectra",
            "--config",
            p(&cfg),
            "--group",
            "su2(L=2)",
            "--out",
            "o"
        ])),
        0
    );
    let text = String::from_utf8(sb.read("o/spectra_su2_l_2.json")).unwrap();
    let mismatched = text.replace("su2(L=2)", "su2(L=1)");
    let input = sb.write("mismatch.json", &mismatched);
    let cfg1 = sb.write("c1.json", &SMALL.replace("\"band\": 2", "\"band\": 1"));
    let o = sb.run(&["norms", "--config", p(&cfg1), "--input", p(&input)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("band mismatch"), "{}", stderr(&o));

    let o = sb.run(&["spectra", "--config", p(&cfg), "--group", "S3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not in the configuration"));
}

fn norm_values(v: &Value) -> Vec<(String, String, f64)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["quantity"].as_str().unwrap().to_string(),
                r["param"].as_str().unwrap().to_string(),
                r["value"].as_f64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn norms_match_library_calls_exactly() {
    let sb = Sandbox::new();
    let cfg = sb.write("c.json", SMALL);
    assert_eq!(
        code(&sb.run(&[
            "spectra",
            "--config",
            p(&cfg),
            "--group",
            "su2(L=2)",
            "--out",
            "o"
        ])),
        0
    );
    let input = sb.path("o/spectra_su2_l_2.json");
    let o = sb.run(&[
        "norms",
        "--config",
        p(&cfg),
        "--input",
        p(&input),
        "--out",
        "o",
        "-q",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let rows = norm_values(&sb.json("o/norms_su2_l_2.json"));

    let g = make_group(&GroupSpec::su2(2)).unwrap();
    let gamma = WeightSequence::canonical(&g);
    let c = random_band_limited(
        sobolev_core::verify::function_seed(20_240_917, 1, 0),
        &g,
        3,
        AmplitudeLaw::Gaussian,
    );
    let f = VectorFunction::spectral(c.clone());
    let mut expected = vec![];
    for (label, p) in [
        ("1.0", 1.0),
        ("1.5", 1.5),
        ("2.0", 2.0),
        ("inf", f64::INFINITY),
    ] {
        expected.push((
            "s_p".to_string(),
            label.to_string(),
            s_p_norm(&c, p).unwrap(),
        ));
    }
    for (label, s) in [("0.0", 0.0), ("0.5", 0.5), ("1.0", 1.0), ("2.0", 2.0)] {
        expected.push((
            "h_s".to_string(),
            label.to_string(),
            h_s_norm(&c, &gamma, s).unwrap(),
        ));
    }
    expected.push(("l_p".into(), "2".into(), l_p_norm(&f, &g, 2.0).unwrap()));
    expected.push((
        "sup".into(),
        String::new(),
        sup_norm(&f, &g, 16, 20_240_917).unwrap(),
    ));
    assert_eq!(rows.len(), expected.len());
    for (got, want) in rows.iter().zip(&expected) {
        assert_eq!((&got.0, &got.1), (&want.0, &want.1));
        assert_eq!(got.2.to_bits(), want.2.to_bits(), "{got:?} vs {want:?}");
    }
    assert!(sb.path("o/norms_su2_l_2.csv").exists());
}

#[test]
fn norms_of_zero_file_are_zero() {
    let sb = Sandbox::new();
    let cfg = sb.write("c.json", SMALL);
    let zero = r#"{"group": "Z4", "m": 1, "p_E": 2, "blocks": [
        {"label": "0", "entries": [[[[0, 0]]]]}, {"label": "1", "entries": [[[[0, 0]]]]},
        {"label": "2", "entries": [[[[0, 0]]]]}, {"label": "3", "entries": [[[[0, 0]]]]}]}"#;
    let input = sb.write("zero.json", zero);
    let o = sb.run(&[
        "norms",
        "--config",
        p(&cfg),
        "--input",
        p(&input),
        "--format",
        "json",
        "--out",
        "o",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(norm_values(&sb.json("o/norms_z4.json"))
        .iter()
        .all(|r| r.2 == 0.0));
    assert!(!sb.path("o/norms_z4.csv").exists());
}

#[test]
fn constants_are_stable_and_match_the_library() {
    let sb = Sandbox::new();
    let cfg = sb.write(
        "c.json",
        r#"{"groups": [{"kind": "su2", "band": 3, "weights": "zero"},
                       {"kind": "cyclic", "n": 4}], "s_grid": [0, 1]}"#,
    );
    for out in ["a", "b"] {
        assert_eq!(
            code(&sb.run(&["constants", "--config", p(&cfg), "--out", out, "-q"])),
            0
        );
    }
    assert_eq!(sb.read("a/constants.json"), sb.read("b/constants.json"));
    assert_eq!(sb.read("a/constants.csv"), sb.read("b/constants.csv"));

    let rows = sb.json("a/constants.json");
    let rows = rows.as_array().unwrap();
    let su2_c: Vec<&Value> = rows
        .iter()
        .filter(|r| r["group"] == "su2(L=3)" && r["quantity"] == "C")
        .collect();
    assert!(su2_c.iter().all(|r| r["verdict"] == "diverging"));

    let g = make_group(&GroupSpec::su2(3)).unwrap();
    let c = embedding_constant_c(&WeightSequence::zero(g.window()), 1.0, g.window()).unwrap();
    assert_eq!(
        su2_c[1]["value"].as_f64().unwrap().to_bits(),
        c.value.to_bits()
    );
    // Z_4 with gamma = 0: C = sqrt(4) = 2, over the whole finite dual.
    let z4 = rows
        .iter()
        .find(|r| r["group"] == "Z4" && r["quantity"] == "C")
        .unwrap();
    assert_eq!(z4["value"].as_f64().unwrap(), 2.0);
    assert_eq!(z4["verdict"], "finite_dual");
}

#[test]
fn verify_small_config_passes_deterministically() {
    let sb = Sandbox::new();
    let cfg = sb.write("c.json", SMALL);
    for out in ["a", "b"] {
        let o = sb.run(&["verify", "--config", p(&cfg), "--out", out]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(String::from_utf8_lossy(&o.stdout).contains("PASS"));
    }
    assert_eq!(sb.read("a/report.json"), sb.read("b/report.json"));
    assert_eq!(sb.read("a/report.csv"), sb.read("b/report.csv"));

    let csv = String::from_utf8(sb.read("a/report.csv")).unwrap();
    assert!(csv.starts_with("name,group,seed,lhs,rhs,slack,tol,pass,"));
    let report = sb.json("a/report.json");
    assert_eq!(report["meta"]["batch_size"], 4);
    assert_eq!(
        csv.lines().count() - 1,
        report["records"].as_array().unwrap().len()
    );
}

#[test]
fn verify_flags_override_the_config() {
    let sb = Sandbox::new();
    let cfg = sb.write("c.json", SMALL);
    let o = sb.run(&[
        "verify",
        "--config",
        p(&cfg),
        "--seed",
        "5",
        "--batch-size",
        "2",
        "--format",
        "json",
        "--out",
        "o",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report = sb.json("o/report.json");
    assert_eq!(report["meta"]["seed"], 5);
    assert_eq!(report["meta"]["batch_size"], 2);
    assert!(!sb.path("o/report.csv").exists());
}

#[test]
fn verify_reads_config_from_environment() {
    let sb = Sandbox::new();
    let cfg = sb.write(
        "env.json",
        &SMALL.replace("\"batch_size\": 4", "\"batch_size\": 1"),
    );
    let o = Command::new(env!("CARGO_BIN_EXE_sobolev"))
        .args(["verify", "--out", "o", "-q"])
        .current_dir(sb.dir.path())
        .env("SOBOLEV_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(sb.json("o/report.json")["meta"]["batch_size"], 1);
}

#[test]
fn verify_rejects_bad_pairs_with_exit_2() {
    let sb = Sandbox::new();
    let cfg = sb.write(
        "bad.json",
        r#"{"groups": [{"kind": "s3"}], "st_pairs": [[2, 1]]}"#,
    );
    let o = sb.run(&["verify", "--config", p(&cfg), "--out", "o"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("t > s"), "{}", stderr(&o));
    assert!(!sb.path("o").exists());
}

#[test]
fn verify_tamper_fails_with_exit_1() {
    let sb = Sandbox::new();
    let cfg = sb.write("c.json", SMALL);
    let o = sb.run(&[
        "verify",
        "--config",
        p(&cfg),
        "--tamper",
        "0.5",
        "--out",
        "o",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("FAIL"));
    let report = sb.json("o/report.json");
    assert_eq!(report["meta"]["tampered"], true);
    assert!(report["records"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["pass"] == false));
}

#[test]
fn usage_errors_exit_2() {
    let sb = Sandbox::new();
    assert_eq!(code(&sb.run(&["frobnicate"])), 2);
    assert_eq!(code(&sb.run(&["verify", "--format", "xml"])), 2);
    let o = sb.run(&["verify", "--config", "nope.json"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("nope.json"));
}

#[test]
fn custom_finite_group_from_table_file() {
    let sb = Sandbox::new();
    sb.write(
        "z2.json",
        r#"{"order": 2, "mult_table": [[0, 1], [1, 0]], "irreps": [
            {"label": "triv", "dim": 1, "matrices": [[[[1, 0]]], [[[1, 0]]]]},
            {"label": "sgn", "dim": 1, "matrices": [[[[1, 0]]], [[[-1, 0]]]]}]}"#,
    );
    sb.write("w.json", r#"{"triv": 0, "sgn": 1}"#);
    let cfg = sb.write(
        "c.json",
        r#"{"groups": [{"kind": "finite", "name": "Z2t", "table": "z2.json", "weights": "w.json"}],
            "batch_size": 3}"#,
    );
    let o = sb.run(&["verify", "--config", p(&cfg), "--out", "o"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(sb.json("o/report.json")["meta"]["groups"][0], "Z2t");

    let broken = sb.write(
        "broken.json",
        r#"{"groups": [{"kind": "finite", "name": "bad", "table": {"order": 2,
            "mult_table": [[0, 1], [1, 1]], "irreps": []}}]}"#,
    );
    let o = sb.run(&["verify", "--config", p(&broken)]);
    assert_eq!(code(&o), 2);
    assert!(!stderr(&o).is_empty());
}
