use std::path::{Path, PathBuf};
use std::process::Command;

use jsonschema::{Draft, JSONSchema};
use serde_json::{json, Value};
use tempfile::TempDir;

use tritile::exactnum::{CycloNum, PiRational, Point};
use tritile::prototiles::TurtlePolygon;

fn schema(name: &str) -> JSONSchema {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "schemas", name].iter().collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let value: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::options().with_draft(Draft::Draft202012).compile(&value).expect("schema compiles")
}

fn conforms(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{name}: {msgs:?}\n{v}");
}

/// Runs the tool with `--json` in `dir`, returning the exit code and parsed report.
fn run(dir: &Path, args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_tritile")).current_dir(dir).arg("--json").args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(stdout.trim()).unwrap_or_else(|_| panic!("not JSON: {stdout:?}"));
    (out.status.code().unwrap(), v)
}

fn read(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) {
    std::fs::write(dir.join(name), v.to_string()).unwrap();
}

fn unsigned(tiles: &[[u32; 4]]) -> Value {
    let g = |v: u32| json!({ "value": v });
    json!({
        "kind": "unsigned",
        "tiles": tiles.iter().map(|t| json!({ "n": g(t[0]), "e": g(t[1]), "s": g(t[2]), "w": g(t[3]) })).collect::<Vec<_>>(),
    })
}

fn unit_square() -> TurtlePolygon {
    let one = CycloNum::one(4);
    let edges = (0..4).map(|k| (one.clone(), PiRational::new(k, 2))).collect();
    TurtlePolygon::from_edges("square", Point::origin(4), edges).unwrap()
}

#[test]
fn sign_one_tile_gives_two_glues() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "one.json", &unsigned(&[[0, 0, 0, 0]]));
    let (code, report) = run(dir.path(), &["sign", "one.json", "-o", "signed.json"]);
    assert_eq!(code, 0);
    conforms("reports/sign.schema.json", &report);
    assert_eq!(report["glues"], 2);
    let signed = read(dir.path(), "signed.json");
    conforms("tileset.schema.json", &signed);
    assert_eq!(signed["kind"], "signed-free");
}

#[test]
fn full_pipeline_validates() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "pair.json", &unsigned(&[[0, 0, 0, 1], [0, 1, 0, 0]]));
    assert_eq!(run(d, &["sign", "pair.json", "-o", "signed.json"]).0, 0);

    let (code, report) = run(d, &["build", "signed.json", "-o", "protos"]);
    assert_eq!(code, 0);
    conforms("reports/build.schema.json", &report);
    assert_eq!((report["n"].as_u64(), report["b"].as_u64()), (Some(5), Some(2)));
    for name in ["wheel", "shuriken", "staple"] {
        conforms("prototile.schema.json", &read(d, &format!("protos/{name}.json")));
        assert!(d.join(format!("protos/{name}.svg")).exists());
    }

    let (code, report) = run(d, &["solve-torus", "signed.json", "--k1", "2", "--k2", "2"]);
    assert_eq!(code, 0);
    conforms("reports/solve-torus.schema.json", &report);
    write(d, "block.json", &report["tiling"]);
    conforms("block.schema.json", &read(d, "block.json"));

    let (code, report) = run(d, &["assemble", "signed.json", "block.json", "-o", "carpet.json"]);
    assert_eq!(code, 0);
    conforms("reports/assemble.schema.json", &report);
    assert_eq!(report["tiles"], json!({ "wheels": 4, "shurikens": 1, "staples": 4 * 4 * (2 + 4) }));
    let carpet = read(d, "carpet.json");
    conforms("carpet.schema.json", &carpet);

    let (code, report) = run(d, &["validate", "carpet.json", "--neat-radius", "1/2"]);
    assert_eq!((code, &report), (0, &json!({ "status": "valid", "neat": true })));
    conforms("reports/validate.schema.json", &report);

    let (code, report) = run(d, &["render", "carpet.json", "--bits", "20", "-o", "carpet.svg"]);
    assert_eq!(code, 0);
    conforms("reports/render.schema.json", &report);
    let first = std::fs::read(d.join("carpet.svg")).unwrap();
    run(d, &["render", "carpet.json", "--bits", "20", "-o", "again.svg"]);
    assert_eq!(first, std::fs::read(d.join("again.svg")).unwrap());
}

#[test]
fn mismatched_block_and_broken_carpet_are_negative() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "pair.json", &unsigned(&[[0, 0, 0, 1], [0, 1, 0, 0]]));
    run(d, &["sign", "pair.json", "-o", "signed.json"]);
    write(d, "bad.json", &json!({ "grid": [[0, 0]] }));
    let (code, report) = run(d, &["assemble", "signed.json", "bad.json", "-o", "c.json"]);
    assert_eq!((code, report["status"].as_str()), (1, Some("mismatched")));
    conforms("reports/assemble.schema.json", &report);

    write(d, "block.json", &json!({ "grid": [[0, 1]] }));
    assert_eq!(run(d, &["assemble", "signed.json", "block.json", "-o", "c.json"]).0, 0);
    let mut carpet = read(d, "c.json");
    // glue the anchor's first edge to itself on the partner side
    carpet["edgeOverlaps"][0][0] = json!([[0, 0]]);
    write(d, "broken.json", &carpet);
    let (code, report) = run(d, &["validate", "broken.json"]);
    assert_eq!((code, report["status"].as_str()), (1, Some("invalid")));
    conforms("reports/validate.schema.json", &report);
}

#[test]
fn torus_without_matching_glues_is_unsatisfiable() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "ns.json", &unsigned(&[[0, 0, 1, 0]]));
    let (code, report) = run(dir.path(), &["solve-torus", "ns.json", "--k1", "1", "--k2", "1"]);
    assert_eq!((code, report), (1, json!({ "status": "unsatisfiable" })));
}

#[test]
fn torus_budget_is_a_usage_failure() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "ns.json", &unsigned(&[[0, 0, 1, 0], [1, 0, 0, 0]]));
    let (code, report) = run(dir.path(), &["solve-torus", "ns.json", "--k1", "3", "--k2", "3", "--budget", "2"]);
    assert_eq!(code, 2);
    conforms("reports/solve-torus.schema.json", &report);
    assert_eq!(report["status"], "budget-exceeded");
}

#[test]
fn angles_and_fill_reports() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "one.json", &unsigned(&[[0, 0, 0, 0]]));
    run(d, &["sign", "one.json", "-o", "signed.json"]);
    run(d, &["build", "signed.json", "-o", "p"]);
    let (code, report) = run(d, &["angles", "p/staple.json", "--n", "5"]);
    assert_eq!(code, 0);
    conforms("reports/angles.schema.json", &report);
    assert_eq!(report["convex"], json!({ "7/16 pi": 4 }));
    assert_eq!(report["reflex"], json!({ "3/4 pi": 1 }));

    let (code, report) = run(d, &["fill", "--target", "3/4", "--inventory", "p/staple.json"]);
    assert_eq!((code, report["options"].as_array().map(Vec::len)), (1, Some(0)));
    conforms("reports/fill.schema.json", &report);
    let (code, report) = run(d, &["fill", "--target", "21/20", "--inventory", "corner=9/10", "tip=1/5", "--flat"]);
    assert_eq!(code, 1);
    conforms("reports/fill.schema.json", &report);
    assert_eq!(report["options"], json!([]));
    let (code, report) = run(d, &["fill", "--target", "11/10", "--inventory", "corner=9/10", "tip=1/5"]);
    assert_eq!((code, report["options"].clone()), (0, json!([{ "corner": 1, "tip": 1 }])));
}

#[test]
fn search_exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "square.json", &serde_json::to_value(unit_square()).unwrap());
    conforms("prototile.schema.json", &read(d, "square.json"));
    let cases = [("9", "100000", 0, "found"), ("2", "100000", 1, "none-within"), ("9", "2", 2, "budget-exceeded")];
    for (max, budget, code, status) in cases {
        let args = ["search", "square.json", "--max-tiles", max, "--radius", "1.2", "--budget", budget, "-o", "w.json"];
        let (c, report) = run(d, &args);
        assert_eq!((c, report["status"].as_str()), (code, Some(status)));
        conforms("reports/search.schema.json", &report);
    }
    let witness = read(d, "w.json");
    conforms("carpet.schema.json", &witness);
    assert_eq!(run(d, &["validate", "w.json", "--neat-radius", "6/5"]).0, 0);
}

#[test]
fn render_prototile() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "square.json", &serde_json::to_value(unit_square()).unwrap());
    let (code, report) = run(d, &["render", "square.json", "-o", "sq.svg"]);
    assert_eq!((code, report["paths"].as_u64()), (0, Some(1)));
    let svg = std::fs::read_to_string(d.join("sq.svg")).unwrap();
    assert!(svg.starts_with("<?xml") && svg.contains("<path"));
}

#[test]
fn usage_and_io_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let (code, report) = run(dir.path(), &["validate", "missing.json"]);
    assert_eq!((code, report["status"].as_str()), (2, Some("error")));
    let out = Command::new(env!("CARGO_BIN_EXE_tritile")).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    write(dir.path(), "signed.json", &unsigned(&[[0, 0, 0, 0]]));
    let (code, _) = run(dir.path(), &["build", "signed.json", "-o", "p"]);
    assert_eq!(code, 2, "an unsigned set is not accepted by build");
}
