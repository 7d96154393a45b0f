use std::f64::consts::{E, PI};
use std::process::{Command, Output};

use serde_json::Value;

fn lwik(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lwik"))
        .args(args)
        .env_remove("LWIK_DEFAULT_TOL")
        .output()
        .expect("spawn lwik")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_thorin_at_one() {
    let o = lwik(&["eval", "--rep", "thorin", "--z", "1.0", "--tol", "1e-10", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let omega = v["value"]["re"].as_f64().unwrap();
    assert!((omega - 0.567_143_290_409_784).abs() < 1e-9, "{omega}");
    assert_eq!(v["value"]["im"].as_f64(), Some(0.0));
    assert!(v["nodes"].as_u64().unwrap() > 0);
    assert!(v["err_estimate"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn eval_stieltjes_at_e_is_inverse_e() {
    let o = lwik(&["eval", "--rep", "stieltjes-w-over-z", "--z", "e", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!((v["value"]["re"].as_f64().unwrap() - 1.0 / E).abs() <= 1e-10);
    assert_eq!(v["z"]["re"].as_f64(), Some(E));
}

#[test]
fn eval_csv_has_header_and_one_row() {
    let o = lwik(&["eval", "--rep", "cauer-z2", "--z", "0.2,-0.5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("rep,target,rule,z_re,z_im,value_re,value_im,err_estimate,nodes"));
    assert!(lines[1].starts_with("cauer-z2,W/z,midpoint,0.2,-0.5,"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&lwik(&["eval", "--rep", "poisson1", "--z", "-0.5"])), 2);
    assert_eq!(code(&lwik(&["eval", "--rep", "bs-branch-m1", "--z", "0.5"])), 2);
    assert_eq!(code(&lwik(&["eval", "--rep", "bernstein", "--z", "1", "--tol", "1e-18"])), 3);
    assert_eq!(code(&lwik(&["eval", "--rep", "nope", "--z", "1"])), 64);
    assert_eq!(code(&lwik(&["eval", "--rep", "thorin", "--z", "1,2,3"])), 64);
    assert_eq!(code(&lwik(&["eval", "--rep", "thorin", "--z", "1", "--tol", "-1"])), 64);
    assert_eq!(code(&lwik(&["eval", "--rep", "thorin", "--z", "1", "--rule", "simpson"])), 64);
    assert_eq!(code(&lwik(&["eval", "--rep", "thorin", "--z", "1", "--bogus"])), 64);
    assert_eq!(code(&lwik(&["frobnicate"])), 64);
    assert_eq!(code(&lwik(&[])), 64);
    assert_eq!(code(&lwik(&["--help"])), 0);
}

#[test]
fn default_tolerance_from_environment() {
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_lwik"))
            .args(["eval", "--rep", "thorin", "--z", "1", "--format", "json"])
            .env("LWIK_DEFAULT_TOL", tol)
            .output()
            .unwrap()
    };
    let loose = json(&run("1e-4"));
    let tight = json(&lwik(&["eval", "--rep", "thorin", "--z", "1", "--format", "json"]));
    assert!(loose["nodes"].as_u64() < tight["nodes"].as_u64());
    assert_eq!(code(&run("abc")), 64);
}

#[test]
fn compare_all_at_one() {
    let o = lwik(&["compare", "--z", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 21);
    let mut ok = 0;
    for r in rows {
        match r["status"].as_str().unwrap() {
            "ok" => {
                ok += 1;
                let err = r["abs_err_vs_oracle"].as_f64().unwrap();
                assert!(err <= 1e-8, "{}: {err}", r["rep"]);
                assert!(r["wall_time_ns"].is_null());
            }
            "out-of-domain" => {
                assert_eq!(r["rep"], "bs-branch-m1");
                assert!(r["value"]["re"].is_null());
            }
            other => panic!("{}: {other}", r["rep"]),
        }
    }
    assert_eq!(ok, 20);
}

#[test]
fn compare_large_argument_reports_nodes() {
    let o = lwik(&["compare", "--rep", "cauer-z2,stieltjes-w-over-z", "--z", "1000", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["rep"], "cauer-z2");
    for r in rows {
        assert_eq!(r["status"], "ok");
        assert!(r["abs_err_vs_oracle"].as_f64().unwrap() <= 1e-10);
        assert!(r["nodes"].as_u64().unwrap() > 0);
    }
}

#[test]
fn compare_orders_rows_and_is_reproducible() {
    let args = [
        "compare", "--rep", "thorin", "--rep", "poisson1,pick", "--z", "2,1", "--grid", "-1/e:e:5",
    ];
    let a = lwik(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, lwik(&args).stdout);
    let text = stdout(&a);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 18);
    // Point-major, filter order within each point.
    assert!(rows[0].starts_with("thorin,W,2.0,1.0,"));
    assert!(rows[1].starts_with("poisson1,W,2.0,1.0,out-of-domain"));
    assert!(rows[2].starts_with("pick,W,2.0,1.0,ok"));
    // The grid starts exactly at the branch point, outside every open domain.
    assert!(rows[4].starts_with("poisson1,W,-0.36787944117144233,0.0,out-of-domain"));
}

#[test]
fn compare_rejects_empty_or_unknown_filter() {
    assert_eq!(code(&lwik(&["compare", "--rep", ""])), 64);
    assert_eq!(code(&lwik(&["compare", "--rep", ","])), 64);
    assert_eq!(code(&lwik(&["compare", "--rep", "thorin,nope"])), 64);
    assert_eq!(code(&lwik(&["compare", "--grid", "1:2"])), 64);
    assert_eq!(code(&lwik(&["compare", "--grid", "0:2:3:log"])), 64);
}

#[test]
fn compare_timing_column_is_filled_on_request() {
    let o = lwik(&["compare", "--rep", "thorin", "--z", "1", "--timing", "--format", "json"]);
    assert!(json(&o)[0]["wall_time_ns"].as_u64().is_some());
}

#[test]
fn identities_default_run_passes() {
    let o = lwik(&["identities", "--tol", "1e-9", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let expected = [PI, (E - 1.0) * PI / E, PI / 2.0, PI / 2.0];
    for (r, e) in rows[8..].iter().zip(expected) {
        assert!((r["expected"].as_f64().unwrap() - e).abs() < 1e-15);
        assert_eq!(r["pass"], true);
    }
    assert_eq!(code(&lwik(&["identities"])), 0);
}

#[test]
fn identities_below_double_precision_report_failures() {
    let o = lwik(&["identities", "--tol", "1e-16", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let rows = json(&o);
    let failed: Vec<&Value> = rows.as_array().unwrap().iter().filter(|r| r["pass"] == false).collect();
    assert!(!failed.is_empty());
    for r in failed {
        let residual = if r["criterion"] == "relative" { &r["rel_error"] } else { &r["abs_error"] };
        assert!(residual.as_f64().unwrap() > 1e-16);
    }
}

#[test]
fn identities_single_nuttall() {
    let o = lwik(&["identities", "--only", "nuttall", "--nu", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 1);
    assert!((rows[0]["computed"].as_f64().unwrap() - 4.5 * PI).abs() < 1e-12);
    assert_eq!(code(&lwik(&["identities", "--only", "closing", "--nu", "3"])), 64);
    assert_eq!(code(&lwik(&["identities", "--nu", "13"])), 64);
}

#[test]
fn pade_staircase() {
    let o = lwik(&["pade", "--m-max", "6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["summary"]["pass"], true);
    let poles = v["poles"].as_array().unwrap();
    assert_eq!(poles[0]["approximant"], "[0/1]");
    assert!((poles[0]["pole"]["re"].as_f64().unwrap() + 1.0).abs() < 1e-14);
    // 1 + 1 + 2 + 2 + … + 6 + 6 poles.
    assert_eq!(poles.len(), 42);
    for p in poles {
        assert!(p["pole"]["re"].as_f64().unwrap() < -1.0 / E);
    }
    assert_eq!(v["interlacing"].as_array().unwrap().len(), 6 + 5 + 5);
}

#[test]
fn pade_degree_limit() {
    assert_eq!(code(&lwik(&["pade", "--m-max", "9"])), 64);
    assert_eq!(code(&lwik(&["pade", "--m-max", "0"])), 64);
    let o = lwik(&["pade", "--m-max", "2"]);
    let text = stdout(&o);
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 4);
    assert!(blocks[1].starts_with("approximant,l,m,index,pole_re,pole_im"));
}

#[test]
fn cm_positive_case_and_negative_control() {
    let o = lwik(&["cm", "--fn", "w-over-x", "--order", "6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["summary"]["pass"], true);
    assert_eq!(v["orders"].as_array().unwrap().len(), 7);

    let o = lwik(&["cm", "--fn", "w", "--order", "2", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["summary"]["first_failing_order"], 1);
    assert_eq!(v["orders"][0]["pass"], true);
}

#[test]
fn cm_parameters_and_errors() {
    let o = lwik(&["cm", "--fn", "s-f", "--params", "0.5,-0.25", "--grid", "0.5:10:6:log"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("function,orders_checked,points,pass"));
    assert_eq!(code(&lwik(&["cm", "--fn", "nope"])), 64);
    assert_eq!(code(&lwik(&["cm", "--fn", "s-a", "--params", "1,2"])), 64);
    assert_eq!(code(&lwik(&["cm", "--fn", "s-a", "--params", "-5"])), 2);
    assert_eq!(code(&lwik(&["cm", "--fn", "w", "--order", "9"])), 64);
    // A grid point too close to 0 for the stencil.
    assert_eq!(code(&lwik(&["cm", "--fn", "w", "--grid", "0:1:3"])), 2);
}

#[test]
fn bench_ladder_is_monotone_and_schema_stable() {
    let args = ["bench", "--z", "2", "--tols", "1e-6,1e-8,1e-10,1e-12", "--samples", "1"];
    let a = lwik(&args);
    assert_eq!(code(&a), 0);
    let text = stdout(&a);
    let header = text.lines().next().unwrap();
    assert_eq!(
        header,
        "rep,z_re,z_im,tol,rule,status,nodes,err_estimate,abs_err_vs_oracle,wall_time_ns"
    );
    let again = stdout(&lwik(&args));
    let strip = |s: &str| -> Vec<String> {
        s.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
    };
    assert_eq!(strip(&text), strip(&again), "numeric columns differ between runs");

    let rows = json(&lwik(&[&args[..], &["--format", "json"]].concat()));
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 21 * 4);
    for chunk in rows.chunks(4) {
        if chunk[0]["status"] != "ok" {
            continue;
        }
        let nodes: Vec<u64> = chunk.iter().map(|r| r["nodes"].as_u64().unwrap()).collect();
        assert!(nodes.windows(2).all(|w| w[0] <= w[1]), "{}: {nodes:?}", chunk[0]["rep"]);
    }
}

#[test]
fn bench_cauer_at_large_argument() {
    let o = lwik(&["bench", "--rep", "cauer-z2", "--z", "1e6", "--samples", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    for r in json(&o).as_array().unwrap() {
        assert_eq!(r["status"], "ok");
        assert!(r["abs_err_vs_oracle"].as_f64().unwrap() <= r["tol"].as_f64().unwrap());
    }
    assert_eq!(code(&lwik(&["bench", "--tols", "1e-6,0"])), 64);
    assert_eq!(code(&lwik(&["bench", "--samples", "0"])), 64);
}
