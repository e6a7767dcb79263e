//! Run configuration: a flat `key = value` document with an optional
//! `[lindblad]` section.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use crate::analytic::has_closed_form;
use crate::codes::CodeSpec;
use crate::lindblad::DEFAULT_STEP;
use crate::noise::NoiseKind;
use crate::protocol::{ArchetypeMode, AuxiliaryKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Numeric,
    Analytic,
    Both,
}

impl Engine {
    pub fn numeric(self) -> bool {
        self != Engine::Analytic
    }

    pub fn analytic(self) -> bool {
        self != Engine::Numeric
    }
}

/// Archetype selection together with its sample count.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchetypeChoice {
    pub mode: ArchetypeMode,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LindbladConfig {
    pub gammas: Vec<f64>,
    pub dt: f64,
    /// Damping time before the protocol; Kraus pre-noise at each `q` when unset.
    pub t1: Option<f64>,
    pub windows: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub code: CodeSpec,
    pub noise: NoiseKind,
    pub qs: Vec<f64>,
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    pub ts: Vec<f64>,
    pub aux: AuxiliaryKind,
    pub archetype: ArchetypeChoice,
    /// Adds the equal-contributing series to a random-archetype run.
    pub reference: bool,
    pub engine: Engine,
    pub coupling: f64,
    pub e_prime: Option<f64>,
    pub lindblad: Option<LindbladConfig>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub key: String,
    pub reason: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key, self.reason)
    }
}

const TOP_KEYS: &[&str] = &[
    "code", "noise", "q", "q_grid", "theta", "theta_grid", "phi", "t", "t_grid", "aux", "archetype", "reference",
    "engine", "g", "e_prime", "out",
];
const LINDBLAD_KEYS: &[&str] = &["gamma", "dt", "t1", "dt_window_grid"];

pub const CODE_NAMES: &[&str] = &["three_qubit", "four_qubit", "five_qubit", "heisenberg2", "heisenberg4"];

pub fn parse_code(s: &str) -> Result<CodeSpec, String> {
    let spec = match s {
        "three_qubit" => CodeSpec::three_qubit(),
        "four_qubit" => CodeSpec::four_qubit(),
        "five_qubit" => CodeSpec::five_qubit(),
        other => match other.strip_prefix("heisenberg").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) => CodeSpec::heisenberg(n),
            None => return Err(format!("unknown code '{other}' (expected one of {})", CODE_NAMES.join(", "))),
        },
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

/// A number, `pi`, or a product/quotient such as `3*pi/4` or `-pi/2`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let factor = |t: &str| -> Result<f64, String> {
        let t = t.trim();
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1.0, rest.trim()),
            None => (1.0, t),
        };
        let v = if body == "pi" {
            std::f64::consts::PI
        } else {
            body.parse::<f64>().map_err(|_| format!("cannot parse '{s}' as a number"))?
        };
        Ok(sign * v)
    };
    let mut value = 1.0;
    for part in num.split('*') {
        value *= factor(part)?;
    }
    if let Some(d) = den {
        let d = factor(d)?;
        if d == 0.0 {
            return Err(format!("division by zero in '{s}'"));
        }
        value /= d;
    }
    if !value.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(value)
}

/// `start:stop:count` (inclusive, evenly spaced) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty grid".into());
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, count] => {
            let (a, b) = (parse_number(start)?, parse_number(stop)?);
            let n: usize = count.trim().parse().map_err(|_| format!("bad point count '{count}'"))?;
            match n {
                0 => Err("empty grid".into()),
                1 => Ok(vec![a]),
                _ => Ok((0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()),
            }
        }
        [_] => s.split(',').map(parse_number).collect(),
        _ => Err(format!("expected start:stop:count or a comma list, got '{s}'")),
    }
}

fn parse_archetype(s: &str) -> Result<ArchetypeChoice, String> {
    let single = |mode| Ok(ArchetypeChoice { mode, samples: 1 });
    match s.split(':').collect::<Vec<_>>().as_slice() {
        ["equal_contributing"] => single(ArchetypeMode::EqualContributing),
        ["equal_all"] => single(ArchetypeMode::EqualAll),
        ["random", n, seed] => {
            let samples: usize = n.parse().map_err(|_| format!("bad sample count '{n}'"))?;
            if samples == 0 {
                return Err("random archetypes need at least one sample".into());
            }
            let seed: u64 = seed.parse().map_err(|_| format!("bad seed '{seed}'"))?;
            Ok(ArchetypeChoice {
                mode: ArchetypeMode::RandomGaussian { seed },
                samples,
            })
        }
        ["random", ..] => Err("random archetypes need the form random:N:seed".into()),
        ["explicit", lists] => {
            let parsed: Result<Vec<Vec<f64>>, String> =
                lists.split(';').map(|l| l.split(',').map(parse_number).collect()).collect();
            single(ArchetypeMode::Explicit(parsed?))
        }
        _ => Err(format!(
            "unknown archetype '{s}' (expected equal_contributing, equal_all, random:N:seed or explicit:b,..;b,..)"
        )),
    }
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    match s {
        "numeric" => Ok(Engine::Numeric),
        "analytic" => Ok(Engine::Analytic),
        "both" => Ok(Engine::Both),
        other => Err(format!("unknown engine '{other}'")),
    }
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("expected true or false, got '{other}'")),
    }
}

struct Fields {
    values: BTreeMap<String, String>,
    errors: Vec<ConfigError>,
}

impl Fields {
    fn error(&mut self, key: &str, reason: impl Into<String>) {
        self.errors.push(ConfigError {
            key: key.into(),
            reason: reason.into(),
        });
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn get<T>(&mut self, key: &str, parse: impl Fn(&str) -> Result<T, String>) -> Option<T> {
        let raw = self.raw(key)?.to_string();
        match parse(&raw) {
            Ok(v) => Some(v),
            Err(reason) => {
                self.error(key, reason);
                None
            }
        }
    }

    /// First present key among aliases.
    fn either<T>(&mut self, keys: &[&str], parse: impl Fn(&str) -> Result<T, String>) -> Option<T> {
        let present: Vec<&str> = keys.iter().copied().filter(|k| self.values.contains_key(*k)).collect();
        if present.len() > 1 {
            self.error(present[1], format!("conflicts with {}", present[0]));
        }
        present.first().and_then(|k| self.get(k, &parse))
    }

    fn required<T>(&mut self, keys: &[&str], parse: impl Fn(&str) -> Result<T, String>) -> Option<T> {
        if keys.iter().all(|k| !self.values.contains_key(*k)) {
            self.error(keys[0], "missing");
            return None;
        }
        self.either(keys, parse)
    }
}

fn tokenize(text: &str) -> Fields {
    let mut fields = Fields {
        values: BTreeMap::new(),
        errors: Vec::new(),
    };
    let mut section = String::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = name.trim().to_string();
            if section != "lindblad" {
                fields.error(&section, format!("unknown section on line {}", n + 1));
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            fields.error(&format!("line {}", n + 1), "expected key = value");
            continue;
        };
        let key = key.trim();
        let path = if section.is_empty() {
            key.to_string()
        } else {
            format!("{section}.{key}")
        };
        let known = if section.is_empty() {
            TOP_KEYS.contains(&key)
        } else {
            LINDBLAD_KEYS.contains(&key)
        };
        if !known {
            fields.error(&path, "unknown key");
            continue;
        }
        match fields.values.entry(path.clone()) {
            Entry::Occupied(_) => fields.error(&path, "duplicate key"),
            Entry::Vacant(slot) => {
                slot.insert(value.trim().to_string());
            }
        }
    }
    fields
}

fn in_unit_interval(values: Vec<f64>) -> Result<Vec<f64>, String> {
    match values.iter().find(|q| !(0.0..=1.0).contains(*q)) {
        Some(q) => Err(format!("q = {q} out of [0,1]")),
        None => Ok(values),
    }
}

fn non_negative(values: Vec<f64>) -> Result<Vec<f64>, String> {
    match values.iter().find(|v| **v < 0.0) {
        Some(v) => Err(format!("{v} is negative")),
        None => Ok(values),
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} must be positive"))
    }
}

/// Parses and validates a configuration, reporting every problem found.
pub fn parse_config(text: &str) -> Result<RunConfig, Vec<ConfigError>> {
    let mut f = tokenize(text);
    let code = f.required(&["code"], parse_code);
    let noise = f.required(&["noise"], |s| s.parse::<NoiseKind>());
    let has_lindblad = f.values.keys().any(|k| k.starts_with("lindblad."));
    let t1 = f.get("lindblad.t1", |s| parse_number(s).and_then(|v| non_negative(vec![v])).map(|v| v[0]));
    let qs = if t1.is_some() {
        f.either(&["q", "q_grid"], |s| parse_grid(s).and_then(in_unit_interval)).or(Some(vec![]))
    } else {
        f.required(&["q", "q_grid"], |s| parse_grid(s).and_then(in_unit_interval))
    };
    let thetas = f.required(&["theta_grid", "theta"], parse_grid);
    let phis = f.either(&["phi"], parse_grid).or(Some(vec![0.0]));
    let ts = if has_lindblad {
        if f.values.contains_key("t") || f.values.contains_key("t_grid") {
            f.error("t_grid", "not used with a [lindblad] section; set lindblad.dt_window_grid");
        }
        Some(vec![])
    } else {
        f.required(&["t_grid", "t"], |s| parse_grid(s).and_then(non_negative))
    };
    let aux = f.either(&["aux"], |s| s.parse::<AuxiliaryKind>()).or(Some(AuxiliaryKind::Qudit));
    let archetype = f.either(&["archetype"], parse_archetype).or(Some(ArchetypeChoice {
        mode: ArchetypeMode::EqualContributing,
        samples: 1,
    }));
    let is_random = archetype.as_ref().is_some_and(|a| a.mode.is_random());
    let reference = f.either(&["reference"], parse_bool).unwrap_or(is_random);
    if reference && !is_random && f.values.contains_key("reference") {
        f.error("reference", "only applies to random archetypes");
    }
    let engine = f.either(&["engine"], parse_engine).or(Some(Engine::Numeric));
    let coupling = f.either(&["g"], positive).or(Some(1.0));
    let e_prime = f.get("e_prime", parse_number);
    let out = f.raw("out").map(PathBuf::from);

    let lindblad = if has_lindblad {
        let gammas = f.required(&["lindblad.gamma"], |s| parse_grid(s).and_then(non_negative));
        let dt = f.either(&["lindblad.dt"], positive).or(Some(DEFAULT_STEP));
        let windows = f.required(&["lindblad.dt_window_grid"], |s| parse_grid(s).and_then(non_negative));
        match (gammas, dt, windows) {
            (Some(gammas), Some(dt), Some(windows)) => Some(Some(LindbladConfig { gammas, dt, t1, windows })),
            _ => None,
        }
    } else {
        Some(None)
    };

    if let (Some(code), Some(noise), Some(engine), Some(aux)) = (&code, noise, engine, aux) {
        if engine.analytic() {
            if !has_closed_form(code, noise) {
                f.error("engine", format!("no closed form for {code} under {noise}"));
            }
            if aux != AuxiliaryKind::Qudit {
                f.error("engine", "closed forms assume a qudit auxiliary");
            }
            if has_lindblad {
                f.error("engine", "closed forms do not cover the [lindblad] section");
            }
        }
    }
    if has_lindblad {
        if is_random {
            f.error("archetype", "random archetypes are not supported with a [lindblad] section");
        }
        if t1.is_some() && (f.values.contains_key("q") || f.values.contains_key("q_grid")) {
            f.error("q", "pre-noise is set by lindblad.t1; remove q");
        }
    } else if t1.is_some() {
        f.error("lindblad.t1", "requires a [lindblad] section");
    }
    if e_prime.is_some() && aux != Some(AuxiliaryKind::QubitPrescription1) {
        f.error("e_prime", "only applies to aux = qubit_p1");
    }

    if !f.errors.is_empty() {
        return Err(f.errors);
    }
    Ok(RunConfig {
        code: code.unwrap(),
        noise: noise.unwrap(),
        qs: qs.unwrap(),
        thetas: thetas.unwrap(),
        phis: phis.unwrap(),
        ts: ts.unwrap(),
        aux: aux.unwrap(),
        archetype: archetype.unwrap(),
        reference,
        engine: engine.unwrap(),
        coupling: coupling.unwrap(),
        e_prime,
        lindblad: lindblad.unwrap(),
        out,
    })
}
