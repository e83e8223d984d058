use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use tritile::assembler::{assemble as assemble_block, assemble_unchecked, tile_counts, AssembleError, WangBlock};
use tritile::carpet::{is_neat_within, layout_anchored, validate as validate_gluing, CarpetGluing};
use tritile::exactnum::{CycloNum, PiRational};
use tritile::prototiles::{angle_inventory, build_prototiles, fill_options, is_clean, SideParams, TurtlePolygon};
use tritile::render::{svg_carpet, svg_polygon, DEFAULT_BITS};
use tritile::search::{grow_neat_carpets_with, SearchOptions, SearchOutcome};
use tritile::wang::{make_signed_free, solve_torus as solve, SetKind, TorusOutcome, WangError, WangTileSet};

/// Exit status plus what to print.
pub struct Report {
    code: u8,
    json: Value,
    text: String,
}

impl Report {
    fn new(code: u8, json: Value, text: impl Into<String>) -> Report {
        Report { code, json, text: text.into() }
    }

    pub fn error(e: anyhow::Error) -> Report {
        let message = format!("{e:#}");
        Report::new(2, json!({ "status": "error", "message": message }), format!("error: {message}"))
    }

    pub fn emit(self, json: bool) -> ExitCode {
        if json {
            println!("{}", self.json);
        } else if self.code == 2 {
            eprintln!("{}", self.text);
        } else {
            println!("{}", self.text);
        }
        ExitCode::from(self.code)
    }
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_set(path: &Path, kind: SetKind) -> Result<WangTileSet> {
    let set: WangTileSet = read(path)?;
    if set.kind != kind {
        bail!("{} is not a {} tile set", path.display(), serde_json::to_value(kind)?.as_str().unwrap_or("?"));
    }
    Ok(WangTileSet::new(set.kind, set.tiles)?)
}

pub fn sign(input: &Path, output: &Path) -> Result<Report> {
    let set = read_set(input, SetKind::Unsigned)?;
    let signed = make_signed_free(&set)?;
    write_json(output, &signed)?;
    let glues = signed.glue_count();
    Ok(Report::new(
        0,
        json!({ "status": "ok", "output": output, "tiles": signed.len(), "glues": glues }),
        format!("wrote {} ({} tiles, {glues} glue values)", output.display(), signed.len()),
    ))
}

pub fn build(input: &Path, params: SideParams, dir: &Path) -> Result<Report> {
    let set = read_set(input, SetKind::SignedFree)?;
    let protos = build_prototiles(&set, params)?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut files = Vec::new();
    for p in [&protos.wheel, &protos.shuriken, &protos.staple] {
        let json_path = dir.join(format!("{}.json", p.name));
        let svg_path = dir.join(format!("{}.svg", p.name));
        write_json(&json_path, p)?;
        write_text(&svg_path, &svg_polygon(p, DEFAULT_BITS))?;
        files.push(json_path);
        files.push(svg_path);
    }
    let meta_path = dir.join("meta.json");
    write_json(&meta_path, &protos.meta)?;
    let tiles_path = dir.join("tiles.json");
    write_json(&tiles_path, &protos.tiles)?;
    files.push(meta_path);
    files.push(tiles_path);
    let (n, b) = (protos.meta.n, protos.meta.b);
    Ok(Report::new(
        0,
        json!({
            "status": "ok",
            "n": n,
            "b": b,
            "vertices": {
                "wheel": protos.wheel.len(),
                "shuriken": protos.shuriken.len(),
                "staple": protos.staple.len(),
            },
            "files": files,
        }),
        format!("built prototiles for n = {n}, b = {b} in {}", dir.display()),
    ))
}

pub fn angles(input: &Path, n: Option<i64>) -> Result<Report> {
    let p: TurtlePolygon = read(input)?;
    let inv = angle_inventory(&p)?;
    let mut report = json!({
        "status": "ok",
        "name": p.name,
        "vertices": p.len(),
        "turnSum": p.turn_sum(),
        "convex": inv.convex,
        "reflex": inv.reflex,
    });
    let mut text = format!("{}: {} vertices\n", p.name, p.len());
    for (a, k) in &inv.convex {
        text += &format!("  convex {a} x{k}\n");
    }
    for (d, k) in &inv.reflex {
        text += &format!("  reflex, defect {d} x{k}\n");
    }
    if let Some(n) = n {
        if n <= 0 {
            bail!("--n must be positive");
        }
        let clean: BTreeMap<String, bool> =
            inv.interior_classes().into_iter().map(|a| (a.to_string(), is_clean(a, n))).collect();
        text += &format!("  clean for n = {n}: {}", clean.values().filter(|c| **c).count());
        report["clean"] = json!(clean);
    }
    Ok(Report::new(0, report, text.trim_end()))
}

pub fn fill(target: &str, inventory: &[String], flat: bool) -> Result<Report> {
    let target: PiRational = target.parse()?;
    let mut items: Vec<(String, PiRational)> = Vec::new();
    for item in inventory {
        if let Some((label, angle)) = item.split_once('=') {
            items.push((label.trim().to_string(), angle.parse()?));
            continue;
        }
        let p: TurtlePolygon = read(Path::new(item))?;
        let inv = angle_inventory(&p)?;
        items.extend(inv.convex.keys().map(|a| (format!("{} {a}", p.name), *a)));
    }
    let options = fill_options(target, &items, flat);
    let code = if options.is_empty() { 1 } else { 0 };
    let mut text = format!("{} way(s) to fill {target}", options.len());
    for o in &options {
        let parts: Vec<String> = o.iter().map(|(l, k)| format!("{k} x {l}")).collect();
        text += &format!("\n  {}", parts.join(" + "));
    }
    Ok(Report::new(
        code,
        json!({ "status": if options.is_empty() { "empty" } else { "ok" }, "target": target, "options": options }),
        text,
    ))
}

pub fn solve_torus(input: &Path, k1: usize, k2: usize, budget: u64) -> Result<Report> {
    let set: WangTileSet = read(input)?;
    match solve(&set, k1, k2, budget) {
        Ok(TorusOutcome::Solved(t)) => {
            let rows: Vec<String> =
                t.grid.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")).collect();
            Ok(Report::new(0, json!({ "status": "solved", "tiling": t }), format!("solved:\n{}", rows.join("\n"))))
        }
        Ok(TorusOutcome::Unsatisfiable) => {
            Ok(Report::new(1, json!({ "status": "unsatisfiable" }), format!("no tiling of the {k1} x {k2} torus")))
        }
        Err(WangError::BudgetExceeded(b)) => Ok(Report::new(
            2,
            json!({ "status": "budget-exceeded", "budget": b }),
            format!("node budget of {b} exhausted"),
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn assemble(set: &Path, block: &Path, params: SideParams, unchecked: bool, output: &Path) -> Result<Report> {
    let set = read_set(set, SetKind::SignedFree)?;
    let block: WangBlock = read(block)?;
    let protos = build_prototiles(&set, params)?;
    let built = if unchecked { assemble_unchecked(&block, &protos) } else { assemble_block(&block, &protos) };
    let g = match built {
        Ok(g) => g,
        Err(e @ AssembleError::MismatchedBlock { .. }) => {
            return Ok(Report::new(1, json!({ "status": "mismatched", "message": e.to_string() }), e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    write_json(output, &g)?;
    let (w, s, t) = tile_counts(block.rows(), block.cols(), protos.meta.n, protos.meta.b);
    Ok(Report::new(
        0,
        json!({
            "status": "ok",
            "output": output,
            "tiles": { "wheels": w, "shurikens": s, "staples": t },
        }),
        format!("wrote {} ({} tiles)", output.display(), g.tiles.len()),
    ))
}

pub fn validate(input: &Path, neat_radius: Option<&str>) -> Result<Report> {
    let g: CarpetGluing = read(input)?;
    let radius = neat_radius.map(CycloNum::parse_real).transpose()?;
    let verdict = validate_gluing(&g);
    let mut report = serde_json::to_value(&verdict)?;
    let mut text = match &verdict.reason {
        None => "valid".to_string(),
        Some(r) => format!("invalid: {r}"),
    };
    let mut ok = verdict.is_valid();
    if let (Some(r), true) = (radius, verdict.is_valid()) {
        let layout = layout_anchored(&g)?;
        let neat = is_neat_within(&g, &layout, &r);
        report["neat"] = json!(neat);
        text += if neat { ", neat within the radius" } else { ", not neat within the radius" };
        ok &= neat;
    }
    Ok(Report::new(if ok { 0 } else { 1 }, report, text))
}

#[allow(clippy::too_many_arguments)]
pub fn search(
    paths: &[std::path::PathBuf],
    max_tiles: usize,
    radius: &str,
    budget: u64,
    threads: Option<usize>,
    reflections: bool,
    output: Option<&Path>,
) -> Result<Report> {
    if max_tiles == 0 {
        bail!("--max-tiles must be positive");
    }
    let prototiles: Vec<TurtlePolygon> = paths.iter().map(|p| read(p)).collect::<Result<_>>()?;
    let mut opts = SearchOptions::new(max_tiles, CycloNum::parse_real(radius)?, budget);
    opts.threads = threads;
    opts.reflections = reflections;
    let report = grow_neat_carpets_with(&prototiles, &opts);
    if let (Some(path), Some(g)) = (output, report.witness()) {
        write_json(path, g)?;
    }
    let (code, text) = match &report.outcome {
        SearchOutcome::Found(g) => (0, format!("found a neat carpet with {} tiles", g.tiles.len())),
        SearchOutcome::NoneWithin(m) => (1, format!("no neat carpet with at most {m} tiles")),
        SearchOutcome::BudgetExceeded => (2, "node budget exhausted".to_string()),
    };
    let text = format!("{text} ({} nodes explored)", report.nodes_explored);
    Ok(Report::new(code, serde_json::to_value(&report)?, text))
}

pub fn render(input: &Path, bits: u32, output: &Path) -> Result<Report> {
    let value: Value = read(input)?;
    let (svg, paths) = if value.get("vertexClasses").is_some() {
        let g: CarpetGluing = serde_json::from_value(value).context("parsing carpet")?;
        let layout = match layout_anchored(&g) {
            Ok(l) => l,
            Err(e) => {
                return Ok(Report::new(
                    1,
                    json!({ "status": "invalid", "message": e.to_string() }),
                    format!("cannot lay out the carpet: {e}"),
                ))
            }
        };
        (svg_carpet(&g, &layout, bits)?, g.tiles.len())
    } else {
        let p: TurtlePolygon = serde_json::from_value(value).context("parsing prototile")?;
        (svg_polygon(&p, bits), 1)
    };
    write_text(output, &svg)?;
    Ok(Report::new(
        0,
        json!({ "status": "ok", "output": output, "paths": paths }),
        format!("wrote {}", output.display()),
    ))
}
