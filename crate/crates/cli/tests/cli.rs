//! End-to-end tests of the command-line driver: exit codes, report shape,
//! and the canonical-JSON round trip.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_transition-lab"))
}

#[test]
fn unknown_family_is_a_usage_error() {
    let out = bin().args(["check", "nosuchfamily", "--t", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn octahedron_check_passes_and_reports_the_right_shape() {
    let out = bin()
        .args(["check", "ideal_octahedron", "--t", "1", "--exact"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["family"], "ideal_octahedron");
    assert_eq!(json["geometry"], "hyperbolic");
    let vertices = json["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 6);
    assert!(vertices.iter().all(|v| v["kind"] == "ideal"));
    let angles = json["angles"].as_array().unwrap();
    assert_eq!(angles.len(), 12);
    for a in angles {
        assert_eq!(a["kind"], "angle");
        let v = a["value"].as_f64().unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
    assert!(json["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

/// Re-emit a parsed JSON value with the driver's own conventions: fixed key
/// order as parsed (preserve_order), floats at 17 significant digits.
fn reemit(v: &serde_json::Value, out: &mut String) {
    match v {
        serde_json::Value::Null => out.push_str("null"),
        serde_json::Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        serde_json::Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format!("{:.16e}", n.as_f64().unwrap()));
            } else {
                out.push_str(&n.to_string());
            }
        }
        serde_json::Value::String(s) => {
            out.push('"');
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    '\r' => out.push_str("\\r"),
                    c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                    c => out.push(c),
                }
            }
            out.push('"');
        }
        serde_json::Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                reemit(item, out);
            }
            out.push(']');
        }
        serde_json::Value::Object(map) => {
            out.push('{');
            for (i, (k, val)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('"');
                out.push_str(k);
                out.push_str("\":");
                reemit(val, out);
            }
            out.push('}');
        }
    }
}

#[test]
fn report_json_round_trips_byte_identically() {
    for args in [
        vec!["check", "ideal_octahedron", "--t", "1"],
        vec!["check", "ks_polytope", "--t", "0.3"],
        vec!["check", "quad_prime", "--t", "-0.5", "--limits", "eta"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "args {args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let text = text.trim_end();
        let parsed: serde_json::Value = serde_json::from_str(text).unwrap();
        let mut re = String::new();
        reemit(&parsed, &mut re);
        assert_eq!(re, text, "round trip must be byte-identical for {args:?}");
    }
}

#[test]
fn check_output_is_deterministic() {
    let a = bin()
        .args(["check", "oct_prime", "--t", "0.5"])
        .output()
        .unwrap();
    let b = bin()
        .args(["check", "oct_prime", "--t", "0.5"])
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn limit_command_lists_every_wall() {
    let out = bin()
        .args(["limit", "oct_prime", "--rescale", "eta", "--side", "pos"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for label in ["L1", "R1", "L2", "R2", "L3", "R3", "L4", "R4"] {
        assert!(text.contains(label), "missing {label} in:\n{text}");
    }
    assert_eq!(text.matches("[degenerate]").count(), 4);
    assert!(text.contains("8 projectively distinct"));
}

#[test]
fn gamma_limit_of_the_point_collapse_dedups_to_six() {
    let out = bin()
        .args(["limit", "oct_collapse", "--rescale", "gamma"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("6 projectively distinct"));
}

#[test]
fn holonomy_defaults_to_the_commutator() {
    let out = bin()
        .args(["holonomy", "three_torus_translations", "--t", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("classification: trivial"), "{text}");
}

#[test]
fn plot_writes_chart_csv() {
    let dir = std::env::temp_dir().join("transition-lab-plot-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quad.csv");
    let out = bin()
        .args([
            "plot",
            "ideal_quadrilateral",
            "--t",
            "1",
            "--chart",
            "x0",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "object,kind,x0,x1,x2,x3,x4");
    let body: Vec<&str> = lines.collect();
    assert!(body.iter().any(|l| l.contains("ideal_vertex")));
    assert!(body.iter().any(|l| l.contains("edge")));
    // Unused trailing columns stay empty for a 2-dimensional family.
    assert!(body[0].ends_with(",,"));
}

#[test]
fn tolerance_env_var_is_honored() {
    let out = bin()
        .args(["check", "ideal_octahedron", "--t", "1"])
        .env("TRANSITION_LAB_TOL", "1e-8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["tolerance"].as_f64().unwrap(), 1e-8);
    let out = bin()
        .args(["check", "ideal_octahedron", "--t", "1"])
        .env("TRANSITION_LAB_TOL", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_domain_parameter_is_a_usage_error() {
    let out = bin()
        .args(["check", "ks_polytope", "--t", "0.6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["check", "oct_prime", "--t", "1.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
