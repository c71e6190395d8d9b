use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use stlc::channel::{
    complexity_profile, dmt_bound, effective_channel, realify, run_bler, ChannelError, ChannelRealization, DmtFamily,
    SimConfig,
};
use stlc::decoder::{pam_system, qr_preprocess, sphere_decode_in, DecodeError, SearchSpace};
use stlc::lattices::{average_energy, member as is_member, min_det_search, rate_bpcu, CoeffVector, LatticeError, LatticeId};

use crate::format::{sig6, write_atomic};
use crate::{CliError, Format};

pub const SCHEMA_VERSION: u64 = 1;
const SEED_ENV: &str = "STLC_SEED";

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ChannelError> for CliError {
    fn from(e: ChannelError) -> Self {
        match e {
            ChannelError::Decode(d) => d.into(),
            ChannelError::InvalidConfig(_) | ChannelError::OutOfRange { .. } | ChannelError::NoBasis(_) => {
                CliError::Validation(e.to_string())
            }
            ChannelError::Lattice(l) => l.into(),
        }
    }
}

impl From<DecodeError> for CliError {
    fn from(e: DecodeError) -> Self {
        match e {
            DecodeError::RankDeficient { .. } => CliError::Runtime(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

fn json_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn coords(x: &[i64]) -> String {
    x.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn mindet(lattice: LatticeId, bound: i64, fmt: Format) -> Result<String, CliError> {
    let m = min_det_search(lattice, bound)?;
    Ok(match fmt {
        Format::Csv => format!("lattice,box,min_det,witness\n{lattice},{bound},{},{}\n", m.value, coords(&m.witness.0)),
        Format::Json => json_string(&json!({
            "lattice": lattice, "box": bound, "min_det": m.value, "witness": m.witness.0,
        })),
    })
}

pub fn member(lattice: LatticeId, x: &[i64], fmt: Format) -> Result<String, CliError> {
    let x: [i64; 8] = x
        .try_into()
        .map_err(|_| CliError::Validation(format!("--x needs 8 integers, got {}", x.len())))?;
    let m = is_member(lattice, &CoeffVector(x));
    Ok(match fmt {
        Format::Csv => format!("lattice,x,member\n{lattice},{},{m}\n", coords(&x)),
        Format::Json => json_string(&json!({ "lattice": lattice, "x": x, "member": m })),
    })
}

pub fn energy(lattice: LatticeId, k: usize, offset: bool, fmt: Format) -> Result<String, CliError> {
    let e = average_energy(lattice, k, offset)?;
    Ok(match fmt {
        Format::Csv => format!("lattice,k,offset,energy\n{lattice},{k},{offset},{}\n", sig6(e)),
        Format::Json => json_string(&json!({ "lattice": lattice, "k": k, "offset": offset, "energy": e })),
    })
}

pub fn rate(lattice: LatticeId, q: u32, fmt: Format) -> Result<String, CliError> {
    let r = rate_bpcu(q, lattice)?;
    Ok(match fmt {
        Format::Csv => format!("lattice,q,rate_bpcu\n{lattice},{q},{}\n", sig6(r)),
        Format::Json => json_string(&json!({ "lattice": lattice, "q": q, "rate_bpcu": r })),
    })
}

pub fn dmt(family: DmtFamily, r: &[f64], fmt: Format) -> Result<String, CliError> {
    let rows = r.iter().map(|&r| Ok((r, dmt_bound(family, r)?))).collect::<Result<Vec<_>, ChannelError>>()?;
    Ok(match fmt {
        Format::Csv => {
            let mut s = String::from("r,diversity\n");
            for (r, d) in rows {
                writeln!(s, "{},{}", sig6(r), sig6(d)).unwrap();
            }
            s
        }
        Format::Json => json_string(&json!({
            "family": family,
            "points": rows.iter().map(|(r, d)| json!({ "r": r, "diversity": d })).collect::<Vec<_>>(),
        })),
    })
}

/// A simulation configuration file: `schema_version`, an optional `output`
/// path, and the remaining fields of [`SimConfig`].
struct ConfigFile {
    sim: SimConfig,
    output: Option<PathBuf>,
    seed_source: &'static str,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))
}

fn load_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = read_file(path)?;
    let mut value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| CliError::Validation("configuration must be a JSON object".into()))?;
    match obj.remove("schema_version").and_then(|v| v.as_u64()) {
        Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(CliError::Validation(format!("unsupported schema_version {v}; expected {SCHEMA_VERSION}"))),
        None => return Err(CliError::Validation("missing integer field `schema_version`".into())),
    }
    let output = match obj.remove("output") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(PathBuf::from(s)),
        Some(_) => return Err(CliError::Validation("`output` must be a string".into())),
    };
    let mut sim: SimConfig =
        serde_json::from_value(value).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let mut seed_source = "config";
    if let Ok(s) = std::env::var(SEED_ENV) {
        sim.seed = s
            .trim()
            .parse()
            .map_err(|_| CliError::Validation(format!("{SEED_ENV} must be an unsigned 64-bit integer, got `{s}`")))?;
        seed_source = SEED_ENV;
    }
    sim.validate()?;
    Ok(ConfigFile { sim, output, seed_source })
}

#[derive(Serialize)]
struct Metadata<'a> {
    schema_version: u64,
    tool_version: &'a str,
    seed: u64,
    seed_source: &'a str,
    config: &'a SimConfig,
    scaling: stlc::channel::SimScaling,
}

fn metadata(cfg: &ConfigFile) -> Result<String, CliError> {
    Ok(json_string(&Metadata {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        seed: cfg.sim.seed,
        seed_source: cfg.seed_source,
        config: &cfg.sim,
        scaling: cfg.sim.scaling()?,
    }))
}

/// Writes the result and its `.meta.json` sidecar, or returns the result
/// for stdout when no output path is set.
fn emit(body: String, output: Option<PathBuf>, meta: String) -> Result<String, CliError> {
    let Some(path) = output else { return Ok(body) };
    let io = |e: std::io::Error| CliError::Runtime(format!("cannot write {}: {e}", path.display()));
    write_atomic(&path, body.as_bytes()).map_err(io)?;
    let mut meta_path = path.clone().into_os_string();
    meta_path.push(".meta.json");
    write_atomic(Path::new(&meta_path), meta.as_bytes()).map_err(io)?;
    Ok(String::new())
}

pub fn simulate(config: &Path, output: Option<PathBuf>, fmt: Format) -> Result<String, CliError> {
    let cfg = load_config(config)?;
    let points = run_bler(&cfg.sim)?;
    let body = match fmt {
        Format::Csv => {
            let mut s = String::from("snr_db,trials,block_errors,bler,avg_nodes,p95_nodes\n");
            for p in &points {
                writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    sig6(p.snr_db),
                    p.trials,
                    p.block_errors,
                    sig6(p.bler),
                    sig6(p.avg_nodes),
                    sig6(p.p95_nodes)
                )
                .unwrap();
            }
            s
        }
        Format::Json => json_string(&points),
    };
    let meta = metadata(&cfg)?;
    emit(body, output.or(cfg.output.clone()), meta)
}

pub fn profile(
    config: &Path,
    bins: usize,
    threshold: Option<f64>,
    output: Option<PathBuf>,
    fmt: Format,
) -> Result<String, CliError> {
    let cfg = load_config(config)?;
    let p = complexity_profile(&cfg.sim, bins)?;
    let near = threshold.map(|t| p.near_collapse_fraction(t));
    let body = match fmt {
        Format::Csv => {
            let mut s = String::from("bin,sensitivity_lo,sensitivity_hi,trials,mean_nodes,p95_nodes\n");
            for (i, b) in p.bins.iter().enumerate() {
                writeln!(
                    s,
                    "{i},{},{},{},{},{}",
                    sig6(b.sensitivity_lo),
                    sig6(b.sensitivity_hi),
                    b.trials,
                    sig6(b.mean_nodes),
                    sig6(b.p95_nodes)
                )
                .unwrap();
            }
            s
        }
        Format::Json => json_string(&json!({
            "bins": p.bins,
            "mean_nodes": p.mean_nodes(),
            "p95_nodes": p.p95_nodes(),
            "threshold": threshold,
            "near_collapse_fraction": near,
        })),
    };
    let mut meta: Value = serde_json::from_str(&metadata(&cfg)?).expect("valid json");
    meta["bins"] = json!(bins);
    meta["near_collapse_fraction"] = json!(near);
    emit(body, output.or(cfg.output.clone()), json_string(&meta))
}

/// One received block: `y = hX + n` with PAM coordinates `u = 2q − Q + 1`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Instance {
    schema_version: u64,
    lattice: LatticeId,
    #[serde(alias = "Q")]
    q: u32,
    /// Channel gains as `[re, im]` pairs.
    h: [[f64; 2]; 4],
    /// Received samples as `[re, im]` pairs.
    y: [[f64; 2]; 4],
    /// Initial squared radius; omitted or null for none.
    #[serde(default)]
    c0: Option<f64>,
}

pub fn decode_trace(path: &Path, fmt: Format) -> Result<String, CliError> {
    let inst: Instance = serde_json::from_str(&read_file(path)?)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    if inst.schema_version != SCHEMA_VERSION {
        return Err(CliError::Validation(format!(
            "unsupported schema_version {}; expected {SCHEMA_VERSION}",
            inst.schema_version
        )));
    }
    let c = |v: [f64; 2]| Complex64::new(v[0], v[1]);
    let h = ChannelRealization::new(inst.h.map(c));
    let g = effective_channel(&h, inst.lattice)?;
    let (b, y) = pam_system(&g, &realify(&inst.y.map(c)), inst.q);
    let space = SearchSpace::for_lattice(inst.lattice, inst.q)?;
    let ch = qr_preprocess(&b)?;
    let mut events = Vec::new();
    let res = sphere_decode_in(&ch, &ch.rotate(&y)?, &space, inst.c0.unwrap_or(f64::INFINITY), Some(&mut events))?;
    Ok(match fmt {
        Format::Csv => {
            let mut s = String::from("level,value,partial_dist,action\n");
            for e in &events {
                writeln!(s, "{},{},{},{}", e.level, e.value, sig6(e.partial_dist), e.action).unwrap();
            }
            eprintln!(
                "found={} q_hat={} distance_sq={} nodes_visited={}",
                res.found,
                coords(&res.q_hat),
                sig6(res.distance_sq),
                res.nodes_visited
            );
            s
        }
        Format::Json => json_string(&json!({
            "found": res.found,
            "q_hat": res.q_hat,
            "distance_sq": if res.found { json!(res.distance_sq) } else { Value::Null },
            "nodes_visited": res.nodes_visited,
            "trace": events.iter().map(|e| json!({
                "level": e.level, "value": e.value, "partial_dist": e.partial_dist, "action": e.action.to_string(),
            })).collect::<Vec<_>>(),
        })),
    })
}
