//! Run configuration: flat dotted keys, one precedence rule.
//!
//! A config file is a single JSON object whose keys mirror the CLI flags
//! (`crystal.n`, `sweep.points`, ...). Command-line flags override file
//! values; anything still missing falls back to documented defaults,
//! with the sweep range and a few atomic parameters resolved from the
//! crystal itself. The resolved configuration is echoed into every
//! output header and reparses to an equal `RunConfig`.

use anyhow::{anyhow, bail, Result};
use bandgap_resonance_core::band::{BandStructure, CrystalSpec};
use bandgap_resonance_core::electronic::Parity;
use serde_json::{Map, Value};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Bands,
    Dos,
    Integral,
    Energy,
    Force,
    Compare,
    Electronic,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bands => "bands",
            Command::Dos => "dos",
            Command::Integral => "integral",
            Command::Energy => "energy",
            Command::Force => "force",
            Command::Compare => "compare",
            Command::Electronic => "electronic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    Separation,
    Detuning,
    Gamma,
    ImpurityEnergy,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::Separation => "separation",
            SweepVar::Detuning => "detuning",
            SweepVar::Gamma => "gamma",
            SweepVar::ImpurityEnergy => "impurity_energy",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "separation" => SweepVar::Separation,
            "detuning" => SweepVar::Detuning,
            "gamma" => SweepVar::Gamma,
            "impurity_energy" => SweepVar::ImpurityEnergy,
            other => bail!("unknown sweep variable '{other}' (expected separation, detuning, gamma or impurity_energy)"),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Direct band-structure parameters, bypassing the slab-crystal model.
/// Useful for runs against published reference values that quote the
/// edge frequency, edge wavenumber and curvature instead of a geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandOverride {
    pub omega_v: f64,
    pub omega_c: f64,
    pub k0: f64,
    pub curvature: f64,
}

/// Fully resolved computation configuration. Everything that affects the
/// numbers lives here; output destination and thread count do not.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub crystal_n: f64,
    pub crystal_a: f64,
    pub bands_override: Option<BandOverride>,
    pub omega_i: f64,
    pub gamma: f64,
    pub dipole: [f64; 3],
    pub separation: f64,
    pub wire_e0: f64,
    pub wire_b: f64,
    pub wire_g: f64,
    pub wire_x: f64,
    pub wire_parity: Parity,
    pub sweep_var: SweepVar,
    pub sweep_start: f64,
    pub sweep_stop: f64,
    pub sweep_points: usize,
    pub sweep_log: bool,
    pub format: Format,
    pub rel_tol: f64,
    pub abs_tol: Option<f64>,
}

/// `RunConfig` plus execution details that never influence row values.
#[derive(Debug, Clone)]
pub struct Invocation {
    pub config: RunConfig,
    pub out: Option<String>,
    pub threads: Option<usize>,
}

/// Raw key-value settings prior to resolution.
#[derive(Debug, Default, Clone)]
pub struct RawSettings(pub BTreeMap<String, Value>);

impl RawSettings {
    pub fn from_json_text(text: &str) -> Result<Self> {
        let map: Map<String, Value> =
            serde_json::from_str(text).map_err(|e| anyhow!("config file is not a flat JSON object: {e}"))?;
        Ok(RawSettings(map.into_iter().collect()))
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.0.insert(key.to_string(), value);
    }

    /// Overlay `other` on top of `self` (other wins).
    pub fn overlay(&mut self, other: RawSettings) {
        for (k, v) in other.0 {
            self.0.insert(k, v);
        }
    }

    fn take_f64(&mut self, key: &str) -> Result<Option<f64>> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(Value::Number(n)) => {
                n.as_f64().map(Some).ok_or_else(|| anyhow!("key '{key}' is not a finite number"))
            }
            Some(other) => bail!("key '{key}' must be a number, got {other}"),
        }
    }

    fn take_usize(&mut self, key: &str) -> Result<Option<usize>> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(Value::Number(n)) => n
                .as_u64()
                .map(|v| Some(v as usize))
                .ok_or_else(|| anyhow!("key '{key}' must be a non-negative integer")),
            Some(other) => bail!("key '{key}' must be an integer, got {other}"),
        }
    }

    fn take_bool(&mut self, key: &str) -> Result<Option<bool>> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(Value::Bool(b)) => Ok(Some(b)),
            Some(other) => bail!("key '{key}' must be a boolean, got {other}"),
        }
    }

    fn take_string(&mut self, key: &str) -> Result<Option<String>> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(other) => bail!("key '{key}' must be a string, got {other}"),
        }
    }
}

pub fn parse_dipole(text: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        bail!("dipole must be three comma-separated components, got '{text}'");
    }
    let mut v = [0.0; 3];
    for (i, p) in parts.iter().enumerate() {
        v[i] = p
            .trim()
            .parse::<f64>()
            .map_err(|_| anyhow!("dipole component '{p}' is not a number"))?;
    }
    if v.iter().all(|c| *c == 0.0) {
        bail!("dipole vector must be non-zero");
    }
    Ok(v)
}

fn default_sweep_range(
    command: Command,
    var: SweepVar,
    bands: &BandStructure,
    wire_b: f64,
) -> Result<(f64, f64)> {
    let gap = bands.omega_c - bands.omega_v;
    Ok(match command {
        Command::Bands => (0.0, bands.k0),
        Command::Dos => (bands.omega_v - 0.5 * gap, bands.omega_c + 0.5 * gap),
        Command::Electronic => match var {
            SweepVar::Separation => (2.0, 100.0),
            SweepVar::ImpurityEnergy => (-0.9 * wire_b, 0.9 * wire_b),
            other => bail!(
                "sweep variable '{}' does not apply to the electronic command",
                other.name()
            ),
        },
        _ => match var {
            SweepVar::Separation => (20.0 / bands.k0, 200.0 / bands.k0),
            SweepVar::Detuning => (1e-5 * bands.omega_c, 1e-3 * bands.omega_c),
            SweepVar::Gamma => (1e-5 * bands.omega_c, 1e-2 * bands.omega_c),
            SweepVar::ImpurityEnergy => bail!(
                "impurity_energy sweeps apply only to the electronic command"
            ),
        },
    })
}

/// Resolve raw settings into a concrete configuration.
///
/// Unknown keys are rejected so that typos cannot silently fall back to
/// defaults.
pub fn resolve(command: Command, mut raw: RawSettings) -> Result<Invocation> {
    // the command key may come from a config file echo; the subcommand wins
    let _ = raw.take_string("command")?;

    let crystal_n = raw.take_f64("crystal.n")?.unwrap_or(2.0);
    let crystal_a = raw.take_f64("crystal.a")?.unwrap_or(1e-7);
    let spec = CrystalSpec::new(crystal_n, crystal_a).map_err(|e| anyhow!("{e}"))?;

    let ov = [
        raw.take_f64("bands.omega-v")?,
        raw.take_f64("bands.omega-c")?,
        raw.take_f64("bands.k0")?,
        raw.take_f64("bands.curvature")?,
    ];
    let bands_override = if ov.iter().all(Option::is_none) {
        None
    } else if let [Some(omega_v), Some(omega_c), Some(k0), Some(curvature)] = ov {
        if !(0.0 < omega_v && omega_v < omega_c && k0 > 0.0 && curvature > 0.0) {
            bail!("bands.* overrides must satisfy 0 < omega-v < omega-c, k0 > 0, curvature > 0");
        }
        Some(BandOverride { omega_v, omega_c, k0, curvature })
    } else {
        bail!("bands.* overrides must be given together: omega-v, omega-c, k0, curvature");
    };

    let bands = match bands_override {
        Some(o) => BandStructure {
            omega_v: o.omega_v,
            omega_c: o.omega_c,
            k0: o.k0,
            curvature_a: o.curvature,
            gap_index: 1,
        },
        None => BandStructure::compute(&spec, 1).map_err(|e| anyhow!("{e}"))?,
    };

    let omega_i = raw
        .take_f64("atoms.omega-i")?
        .unwrap_or(bands.omega_c * (1.0 + 1e-4));
    let gamma = raw.take_f64("atoms.gamma")?.unwrap_or(0.0);
    let dipole = match raw.take_string("atoms.dipole")? {
        Some(text) => parse_dipole(&text)?,
        None => [0.0, 0.0, 1.0],
    };
    let separation = raw
        .take_f64("atoms.separation")?
        .unwrap_or(100.25 / bands.k0);

    let wire_e0 = raw.take_f64("wire.e0")?.unwrap_or(0.0);
    let wire_b = raw.take_f64("wire.b")?.unwrap_or(1.0);
    let wire_g = raw.take_f64("wire.g")?.unwrap_or(0.1);
    let wire_x = raw.take_f64("wire.x")?.unwrap_or(10.0);
    let wire_parity = match raw.take_string("wire.parity")?.as_deref() {
        None | Some("symmetric") => Parity::Symmetric,
        Some("antisymmetric") => Parity::Antisymmetric,
        Some(other) => bail!("wire.parity must be symmetric or antisymmetric, got '{other}'"),
    };

    let sweep_var = match raw.take_string("sweep.var")? {
        Some(s) => SweepVar::parse(&s)?,
        None => match command {
            Command::Compare => SweepVar::Gamma,
            _ => SweepVar::Separation,
        },
    };
    let (def_start, def_stop) = default_sweep_range(command, sweep_var, &bands, wire_b)?;
    let sweep_start = raw.take_f64("sweep.start")?.unwrap_or(def_start);
    let sweep_stop = raw.take_f64("sweep.stop")?.unwrap_or(def_stop);
    let sweep_points = raw.take_usize("sweep.points")?.unwrap_or(50);
    let sweep_log = raw.take_bool("sweep.log")?.unwrap_or(false);

    let format = match raw.take_string("format")?.as_deref() {
        None | Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some(other) => bail!("format must be csv or json, got '{other}'"),
    };
    let rel_tol = raw.take_f64("rel-tol")?.unwrap_or(1e-9);
    let abs_tol = raw.take_f64("abs-tol")?;

    let out = raw.take_string("out")?;
    let threads = raw.take_usize("threads")?;

    if let Some(key) = raw.0.keys().next() {
        bail!("unknown configuration key '{key}'");
    }

    if sweep_points < 2 {
        bail!("sweep.points must be at least 2, got {sweep_points}");
    }
    if !(sweep_start < sweep_stop) {
        bail!("sweep.start ({sweep_start:e}) must precede sweep.stop ({sweep_stop:e})");
    }
    if sweep_log && !(sweep_start > 0.0) {
        bail!("log spacing requires sweep.start > 0");
    }
    if !(rel_tol > 0.0) {
        bail!("rel-tol must be positive");
    }
    if let Some(a) = abs_tol {
        if !(a > 0.0) {
            bail!("abs-tol must be positive");
        }
    }
    if gamma < 0.0 {
        bail!("atoms.gamma must be non-negative");
    }
    if command == Command::Compare && sweep_var != SweepVar::Gamma && !(gamma > 0.0) {
        bail!("the compare command needs a positive atoms.gamma unless gamma is the sweep variable");
    }
    if !(wire_b > 0.0) {
        bail!("wire.b must be positive");
    }
    if !(wire_x > 0.0) {
        bail!("wire.x must be positive");
    }

    Ok(Invocation {
        config: RunConfig {
            command,
            crystal_n,
            crystal_a,
            bands_override,
            omega_i,
            gamma,
            dipole,
            separation,
            wire_e0,
            wire_b,
            wire_g,
            wire_x,
            wire_parity,
            sweep_var,
            sweep_start,
            sweep_stop,
            sweep_points,
            sweep_log,
            format,
            rel_tol,
            abs_tol,
        },
        out,
        threads,
    })
}

impl RunConfig {
    pub fn crystal(&self) -> Result<CrystalSpec> {
        CrystalSpec::new(self.crystal_n, self.crystal_a).map_err(|e| anyhow!("{e}"))
    }

    /// Band structure the run computes against: the crystal-derived one,
    /// or the explicit override.
    pub fn effective_bands(&self) -> Result<BandStructure> {
        match self.bands_override {
            Some(o) => Ok(BandStructure {
                omega_v: o.omega_v,
                omega_c: o.omega_c,
                k0: o.k0,
                curvature_a: o.curvature,
                gap_index: 1,
            }),
            None => BandStructure::compute(&self.crystal()?, 1).map_err(|e| anyhow!("{e}")),
        }
    }

    /// Serialize to the flat dotted-key JSON object used in headers and
    /// config files. Keys are sorted, values lossless.
    pub fn to_flat_json(&self) -> String {
        let mut m: BTreeMap<String, Value> = BTreeMap::new();
        let num = |v: f64| Value::from(v);
        m.insert("command".into(), self.command.name().into());
        m.insert("crystal.n".into(), num(self.crystal_n));
        m.insert("crystal.a".into(), num(self.crystal_a));
        if let Some(o) = self.bands_override {
            m.insert("bands.omega-v".into(), num(o.omega_v));
            m.insert("bands.omega-c".into(), num(o.omega_c));
            m.insert("bands.k0".into(), num(o.k0));
            m.insert("bands.curvature".into(), num(o.curvature));
        }
        m.insert("atoms.omega-i".into(), num(self.omega_i));
        m.insert("atoms.gamma".into(), num(self.gamma));
        m.insert(
            "atoms.dipole".into(),
            format!("{:e},{:e},{:e}", self.dipole[0], self.dipole[1], self.dipole[2]).into(),
        );
        m.insert("atoms.separation".into(), num(self.separation));
        m.insert("wire.e0".into(), num(self.wire_e0));
        m.insert("wire.b".into(), num(self.wire_b));
        m.insert("wire.g".into(), num(self.wire_g));
        m.insert("wire.x".into(), num(self.wire_x));
        m.insert(
            "wire.parity".into(),
            match self.wire_parity {
                Parity::Symmetric => "symmetric",
                Parity::Antisymmetric => "antisymmetric",
            }
            .into(),
        );
        m.insert("sweep.var".into(), self.sweep_var.name().into());
        m.insert("sweep.start".into(), num(self.sweep_start));
        m.insert("sweep.stop".into(), num(self.sweep_stop));
        m.insert("sweep.points".into(), Value::from(self.sweep_points as u64));
        m.insert("sweep.log".into(), Value::from(self.sweep_log));
        m.insert("format".into(), self.format.name().into());
        m.insert("rel-tol".into(), num(self.rel_tol));
        if let Some(a) = self.abs_tol {
            m.insert("abs-tol".into(), num(a));
        }
        serde_json::to_string(&m).expect("flat config serializes")
    }

    /// Reparse a flat JSON echo back into a resolved configuration.
    pub fn from_flat_json(text: &str) -> Result<RunConfig> {
        let mut raw = RawSettings::from_json_text(text)?;
        let command = match raw.0.get("command").and_then(Value::as_str) {
            Some("bands") => Command::Bands,
            Some("dos") => Command::Dos,
            Some("integral") => Command::Integral,
            Some("energy") => Command::Energy,
            Some("force") => Command::Force,
            Some("compare") => Command::Compare,
            Some("electronic") => Command::Electronic,
            other => bail!("missing or invalid command in config echo: {other:?}"),
        };
        raw.0.remove("command");
        Ok(resolve(command, raw)?.config)
    }
}
