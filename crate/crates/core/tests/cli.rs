//! The `loopss` binary: exit codes, determinism, cross-format consistency.

use std::collections::BTreeMap;
use std::process::{Command, Output};

fn loopss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(
        loopss(&["verify", "--model", "sphere:3", "--expect", "theorem2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        loopss(&["verify", "--model", "cpn:3", "--expect", "theorem3"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        loopss(&["verify", "--model", "circle"]).status.code(),
        Some(0)
    );

    let fail = loopss(&[
        "verify",
        "--model",
        "sphere:2",
        "--expect",
        "theorem2-odd-form",
    ]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("mismatch at (-2,2)"));

    for bad in [
        vec!["compute", "--model", "sphere:1"],
        vec!["compute", "--model", "torus"],
        vec!["compute", "--model", "custom:/nonexistent/file.model"],
        vec!["compute", "--model", "sphere:2", "--tmax", "3"],
        vec!["compute", "--model", "sphere:2", "--pages", "7..9"],
        vec!["verify", "--model", "sphere:2", "--expect", "theorem3"],
        vec!["compute"],
    ] {
        let o = loopss(&bad);
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
        assert!(!o.stderr.is_empty(), "{bad:?}");
    }
}

#[test]
fn custom_model_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("loopss-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.model");
    std::fs::write(&path, "dim 4\nbase a (-4,0) exterior\nrel 0 a^2\nfiber u (0,3) polynomial\ndiff r=4 d(u) = 2 a*u\n").unwrap();
    let o = loopss(&["compute", "--model", &format!("custom:{}", path.display())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));

    std::fs::write(&path, "dim 4\nbase a (-4,0) exterior\nrel 0 a^2\nfiber u (0,3) polynomial\ndiff r=4 d(u) = 2 a*u^2\n").unwrap();
    let model = format!("custom:{}", path.display());
    let custom = loopss(&["compute", "--model", &model, "--format", "json"]);
    let builtin = loopss(&["compute", "--model", "sphere:4", "--format", "json"]);
    assert_eq!(custom.status.code(), Some(0));
    assert_eq!(custom.stdout, builtin.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = [
        "compute", "--model", "cpn:2", "--tmax", "12", "--format", "json",
    ];
    let a = loopss(&args);
    let b = loopss(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let pages: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let einf = pages.as_array().unwrap().last().unwrap();
    let torsion_cell = einf["cells"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["s"] == -4 && c["t"] == 4)
        .expect("cell (-4,4) present");
    assert_eq!(torsion_cell["torsion"], serde_json::json!([3]));
}

/// Group labels per `(r, s, t)` read back from a chart.
fn chart_groups(chart: &str) -> BTreeMap<(i64, i64, i64), String> {
    let mut out = BTreeMap::new();
    let mut r = 0;
    let mut columns: Vec<i64> = Vec::new();
    for line in chart.lines() {
        if let Some(rest) = line.strip_prefix("E_") {
            r = rest
                .split(|c: char| !c.is_ascii_digit())
                .next()
                .unwrap()
                .parse()
                .unwrap();
            continue;
        }
        let Some((head, body)) = line.split_once('|') else {
            continue;
        };
        let head = head.trim();
        if head == "t" {
            columns = body
                .split_whitespace()
                .map(|s| s.parse().unwrap())
                .collect();
            continue;
        }
        let Ok(t) = head.parse::<i64>() else { continue };
        for (s, label) in columns.iter().zip(body.split_whitespace()) {
            if label != "." && label != "?" {
                out.insert((r, *s, t), label.to_string());
            }
        }
    }
    out
}

fn json_groups(json: &serde_json::Value) -> BTreeMap<(i64, i64, i64), String> {
    let mut out = BTreeMap::new();
    for page in json.as_array().unwrap() {
        let r = page["r"].as_i64().unwrap();
        for c in page["cells"].as_array().unwrap() {
            let rank = c["rank"].as_u64().unwrap();
            let torsion: Vec<String> = c["torsion"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| format!("Z/{x}"))
                .collect();
            let mut parts = Vec::new();
            match rank {
                0 => {}
                1 => parts.push("Z".to_string()),
                k => parts.push(format!("Z^{k}")),
            }
            parts.extend(torsion);
            out.insert(
                (r, c["s"].as_i64().unwrap(), c["t"].as_i64().unwrap()),
                parts.join("+"),
            );
        }
    }
    out
}

#[test]
fn chart_and_json_agree() {
    for model in ["sphere:2", "sphere:3", "cpn:2", "cpn:3"] {
        let chart = stdout(&loopss(&["compute", "--model", model, "--format", "chart"]));
        let json: serde_json::Value = serde_json::from_slice(
            &loopss(&["compute", "--model", model, "--format", "json"]).stdout,
        )
        .unwrap();
        let from_chart = chart_groups(&chart);
        assert!(!from_chart.is_empty());
        assert_eq!(from_chart, json_groups(&json), "{model}");
    }
}

#[test]
fn svg_output_is_written() {
    let path = std::env::temp_dir().join(format!("loopss-{}.svg", std::process::id()));
    let o = loopss(&[
        "compute",
        "--model",
        "sphere:2",
        "--format",
        "chart",
        "--pages",
        "2",
        "--svg",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("<svg") && svg.contains("×2"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn circle_prints_the_closed_form() {
    let o = loopss(&["compute", "--model", "circle", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pieces = v["pieces"].as_array().unwrap();
    let basis = |j: i64| pieces.iter().find(|p| p["degree"] == j).unwrap()["basis"].clone();
    assert_eq!(basis(0), serde_json::json!(["t^k"]));
    assert_eq!(basis(-1), serde_json::json!(["a*t^k"]));
    assert_eq!(basis(1), serde_json::json!([]));
}
