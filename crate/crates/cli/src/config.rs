//! Key-value scenario configs: `key: value` lines, `#` comments, unit
//! suffixes converted to SI at parse time, and a canonical serialized form
//! that round-trips.

use std::fmt::Write as _;
use std::path::PathBuf;

use cpshield::constants::{
    DEGENERACY_DEFAULT, DIPOLE_SQ_AU, D_LAYER_DEFAULT, EV, GAMMA_HOP_DEFAULT, GOLD_GAMMA_E,
    GOLD_OMEGA_PE, HBAR, V_FERMI_DEFAULT,
};
use cpshield::Mode;

#[derive(Debug, Clone)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: Some(line),
        message: message.into(),
    }
}

fn err_global(message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: None,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AtomSource {
    Fixture(PathBuf),
    Inline {
        name: String,
        state: String,
        transitions: Vec<(f64, f64)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheetKind {
    Undoped,
    Doped,
    Bilayer,
    Perfect,
}

impl SheetKind {
    fn word(self) -> &'static str {
        match self {
            SheetKind::Undoped => "undoped",
            SheetKind::Doped => "doped",
            SheetKind::Bilayer => "bilayer",
            SheetKind::Perfect => "perfect",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SheetConfig {
    pub kind: SheetKind,
    pub doping: Option<f64>,
    pub v_fermi: f64,
    pub degeneracy: f64,
    pub gamma_hop: f64,
    pub d_layer: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SubstrateConfig {
    Vacuum,
    PerfectConductor,
    Drude { omega_pe: f64, gamma_e: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    AtomHeight,
    Gap,
    Doping,
}

impl AxisKind {
    pub fn word(self) -> &'static str {
        match self {
            AxisKind::AtomHeight => "z_a",
            AxisKind::Gap => "gap",
            AxisKind::Doping => "doping",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub log: bool,
}

impl GridConfig {
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.hi
                } else if self.log {
                    self.lo * (self.hi / self.lo).powf(i as f64 / (n - 1) as f64)
                } else {
                    self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseKind {
    Chi,
    Alpha,
    Reflection,
    SigmaXx,
    SigmaZz,
    F,
}

impl ResponseKind {
    fn word(self) -> &'static str {
        match self {
            ResponseKind::Chi => "chi",
            ResponseKind::Alpha => "alpha",
            ResponseKind::Reflection => "reflection",
            ResponseKind::SigmaXx => "sigma_xx",
            ResponseKind::SigmaZz => "sigma_zz",
            ResponseKind::F => "f",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseAxis {
    K,
    Xi,
    Omega,
    KTilde,
    XiTilde,
}

impl ResponseAxis {
    pub fn word(self) -> &'static str {
        match self {
            ResponseAxis::K => "k",
            ResponseAxis::Xi => "xi",
            ResponseAxis::Omega => "omega",
            ResponseAxis::KTilde => "k_tilde",
            ResponseAxis::XiTilde => "xi_tilde",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResponseConfig {
    pub kind: ResponseKind,
    pub axis: ResponseAxis,
    pub k: Option<f64>,
    pub xi: Option<f64>,
    pub omega: Option<f64>,
    pub k_tilde: Option<f64>,
    pub xi_tilde: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub atom: AtomSource,
    pub sheet: Option<SheetConfig>,
    pub substrate: SubstrateConfig,
    pub gap: f64,
    pub z_a: Option<f64>,
    pub sweep: Option<AxisKind>,
    pub response: Option<ResponseConfig>,
    pub grid: Option<GridConfig>,
    pub mode: Mode,
    pub rel_tol: Option<f64>,
    pub max_refinements: Option<usize>,
    pub out: Option<PathBuf>,
}

const LENGTH_UNITS: &[(&str, f64)] = &[
    ("m", 1.0),
    ("um", 1e-6),
    ("µm", 1e-6),
    ("nm", 1e-9),
    ("angstrom", 1e-10),
];
const FREQUENCY_UNITS: &[(&str, f64)] = &[("rad/s", 1.0), ("eV", EV / HBAR)];
const ENERGY_UNITS: &[(&str, f64)] = &[("J", 1.0), ("eV", EV)];
const DOPING_UNITS: &[(&str, f64)] = &[("m^-2", 1.0), ("cm^-2", 1e4)];
const DIPOLE_SQ_UNITS: &[(&str, f64)] = &[("C^2m^2", 1.0), ("au", DIPOLE_SQ_AU)];
const BARE: &[(&str, f64)] = &[];

fn parse_quantity(value: &str, units: &[(&str, f64)], what: &str) -> Result<f64, String> {
    let mut tokens = value.split_whitespace();
    let number = tokens
        .next()
        .ok_or_else(|| format!("empty {what} value"))?;
    let number: f64 = number
        .parse()
        .map_err(|_| format!("`{number}` is not a number"))?;
    let scaled = match tokens.next() {
        None => number,
        Some(unit) => {
            let factor = units
                .iter()
                .find(|(u, _)| *u == unit)
                .map(|(_, f)| *f)
                .ok_or_else(|| {
                    let known: Vec<&str> = units.iter().map(|(u, _)| *u).collect();
                    if known.is_empty() {
                        format!("{what} takes no unit, got `{unit}`")
                    } else {
                        format!("unknown {what} unit `{unit}` (know {})", known.join(", "))
                    }
                })?;
            number * factor
        }
    };
    if tokens.next().is_some() {
        return Err(format!("trailing text after {what} value"));
    }
    if !scaled.is_finite() {
        return Err(format!("{what} value is not finite"));
    }
    Ok(scaled)
}

const KNOWN_KEYS: &[&str] = &[
    "atom",
    "atom_name",
    "atom_state",
    "transition",
    "sheet",
    "doping",
    "v_fermi",
    "degeneracy",
    "gamma_hop",
    "d_layer",
    "substrate",
    "omega_pe",
    "gamma_e",
    "gap",
    "z_a",
    "sweep",
    "response",
    "response_axis",
    "k",
    "xi",
    "omega",
    "k_tilde",
    "xi_tilde",
    "grid",
    "mode",
    "rel_tol",
    "max_refinements",
    "out",
];

struct RawConfig {
    entries: Vec<(usize, String, String)>,
}

impl RawConfig {
    fn take(&self, key: &str) -> Option<(usize, &str)> {
        self.entries
            .iter()
            .find(|(_, k, _)| k == key)
            .map(|(n, _, v)| (*n, v.as_str()))
    }

    fn quantity(
        &self,
        key: &str,
        units: &[(&str, f64)],
    ) -> Result<Option<f64>, ConfigError> {
        match self.take(key) {
            None => Ok(None),
            Some((line, value)) => parse_quantity(value, units, key)
                .map(Some)
                .map_err(|m| err(line, m)),
        }
    }
}

fn collect_entries(text: &str) -> Result<RawConfig, ConfigError> {
    let mut entries: Vec<(usize, String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(err(line_no, format!("expected `key: value`, got `{line}`")));
        };
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(err(line_no, format!("unknown key `{key}`")));
        }
        if value.is_empty() {
            return Err(err(line_no, format!("key `{key}` has no value")));
        }
        if key != "transition" {
            if let Some((first, _, _)) = entries.iter().find(|(_, k, _)| k == key) {
                return Err(err(
                    line_no,
                    format!("duplicate key `{key}` (first set on line {first})"),
                ));
            }
        }
        entries.push((line_no, key.to_string(), value.to_string()));
    }
    Ok(RawConfig { entries })
}

fn parse_atom(raw: &RawConfig) -> Result<AtomSource, ConfigError> {
    let fixture = raw.take("atom");
    let transitions: Vec<(usize, &str)> = raw
        .entries
        .iter()
        .filter(|(_, k, _)| k == "transition")
        .map(|(n, _, v)| (*n, v.as_str()))
        .collect();
    match (fixture, transitions.is_empty()) {
        (Some((_, path)), true) => Ok(AtomSource::Fixture(PathBuf::from(path))),
        (Some((line, _)), false) => Err(err(
            line,
            "give either `atom:` (fixture path) or `transition:` lines, not both",
        )),
        (None, true) => Err(err_global(
            "missing atom: give `atom:` (fixture path) or `transition:` lines",
        )),
        (None, false) => {
            let mut parsed = Vec::new();
            for (line, value) in transitions {
                let Some((omega, d2)) = value.split_once(',') else {
                    return Err(err(line, "transition wants `<omega>, <d2>`"));
                };
                let omega = parse_quantity(omega.trim(), FREQUENCY_UNITS, "omega")
                    .map_err(|m| err(line, m))?;
                let d2 = parse_quantity(d2.trim(), DIPOLE_SQ_UNITS, "d2")
                    .map_err(|m| err(line, m))?;
                parsed.push((omega, d2));
            }
            let name = raw
                .take("atom_name")
                .map(|(_, v)| v.to_string())
                .unwrap_or_else(|| "inline".to_string());
            let state = raw
                .take("atom_state")
                .map(|(_, v)| v.to_string())
                .unwrap_or_else(|| "custom".to_string());
            Ok(AtomSource::Inline {
                name,
                state,
                transitions: parsed,
            })
        }
    }
}

fn reject(raw: &RawConfig, key: &str, reason: &str) -> Result<(), ConfigError> {
    match raw.take(key) {
        Some((line, _)) => Err(err(line, format!("`{key}` only applies {reason}"))),
        None => Ok(()),
    }
}

fn parse_sheet(raw: &RawConfig) -> Result<Option<SheetConfig>, ConfigError> {
    let kind = match raw.take("sheet") {
        None | Some((_, "none")) => {
            for key in ["doping", "v_fermi", "degeneracy", "gamma_hop", "d_layer"] {
                reject(raw, key, "when a sheet is configured")?;
            }
            return Ok(None);
        }
        Some((_, "undoped")) => SheetKind::Undoped,
        Some((_, "doped")) => SheetKind::Doped,
        Some((_, "bilayer")) => SheetKind::Bilayer,
        Some((_, "perfect")) => SheetKind::Perfect,
        Some((line, other)) => {
            return Err(err(
                line,
                format!("unknown sheet `{other}` (know none, undoped, doped, bilayer, perfect)"),
            ))
        }
    };

    let doping = raw.quantity("doping", DOPING_UNITS)?;
    match kind {
        SheetKind::Doped => {
            if doping.is_none() {
                return Err(err_global("sheet: doped needs a `doping:` value"));
            }
        }
        _ => reject(raw, "doping", "to sheet: doped")?,
    }
    if kind == SheetKind::Perfect {
        for key in ["v_fermi", "degeneracy", "gamma_hop", "d_layer"] {
            reject(raw, key, "to Dirac and bilayer sheets")?;
        }
    }
    if kind != SheetKind::Bilayer {
        reject(raw, "gamma_hop", "to sheet: bilayer")?;
        reject(raw, "d_layer", "to sheet: bilayer")?;
    } else {
        reject(raw, "degeneracy", "to undoped and doped sheets")?;
    }

    Ok(Some(SheetConfig {
        kind,
        doping,
        v_fermi: raw.quantity("v_fermi", BARE)?.unwrap_or(V_FERMI_DEFAULT),
        degeneracy: raw
            .quantity("degeneracy", BARE)?
            .unwrap_or(DEGENERACY_DEFAULT),
        gamma_hop: raw
            .quantity("gamma_hop", ENERGY_UNITS)?
            .unwrap_or(GAMMA_HOP_DEFAULT),
        d_layer: raw
            .quantity("d_layer", LENGTH_UNITS)?
            .unwrap_or(D_LAYER_DEFAULT),
    }))
}

fn parse_substrate(raw: &RawConfig) -> Result<SubstrateConfig, ConfigError> {
    let drude_keys_allowed = matches!(raw.take("substrate"), Some((_, "drude")));
    if !drude_keys_allowed {
        reject(raw, "omega_pe", "to substrate: drude")?;
        reject(raw, "gamma_e", "to substrate: drude")?;
    }
    match raw.take("substrate") {
        None | Some((_, "vacuum")) => Ok(SubstrateConfig::Vacuum),
        Some((_, "perfect-conductor")) => Ok(SubstrateConfig::PerfectConductor),
        Some((_, "gold")) => Ok(SubstrateConfig::Drude {
            omega_pe: GOLD_OMEGA_PE,
            gamma_e: GOLD_GAMMA_E,
        }),
        Some((_, "drude")) => Ok(SubstrateConfig::Drude {
            omega_pe: raw
                .quantity("omega_pe", FREQUENCY_UNITS)?
                .unwrap_or(GOLD_OMEGA_PE),
            gamma_e: raw
                .quantity("gamma_e", FREQUENCY_UNITS)?
                .unwrap_or(GOLD_GAMMA_E),
        }),
        Some((line, other)) => Err(err(
            line,
            format!(
                "unknown substrate `{other}` (know vacuum, gold, drude, perfect-conductor)"
            ),
        )),
    }
}

fn parse_grid(raw: &RawConfig, axis_units: &[(&str, f64)]) -> Result<Option<GridConfig>, ConfigError> {
    let Some((line, value)) = raw.take("grid") else {
        return Ok(None);
    };
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() < 3 || parts.len() > 4 {
        return Err(err(line, "grid wants `<lo>, <hi>, <count>[, log|lin]`"));
    }
    let lo = parse_quantity(parts[0], axis_units, "grid lower end").map_err(|m| err(line, m))?;
    let hi = parse_quantity(parts[1], axis_units, "grid upper end").map_err(|m| err(line, m))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| err(line, format!("`{}` is not a point count", parts[2])))?;
    let log = match parts.get(3).copied() {
        None | Some("log") => true,
        Some("lin") => false,
        Some(other) => return Err(err(line, format!("grid spacing is log or lin, not `{other}`"))),
    };
    if count < 2 {
        return Err(err(line, "grid needs at least 2 points"));
    }
    if !(lo < hi) {
        return Err(err(line, "grid needs lo < hi"));
    }
    if log && lo <= 0.0 {
        return Err(err(line, "log grid needs lo > 0"));
    }
    Ok(Some(GridConfig { lo, hi, count, log }))
}

fn parse_response(raw: &RawConfig) -> Result<Option<ResponseConfig>, ConfigError> {
    let kind = match raw.take("response") {
        None => {
            for key in ["response_axis", "k", "xi", "omega", "k_tilde", "xi_tilde"] {
                reject(raw, key, "to response dumps")?;
            }
            return Ok(None);
        }
        Some((_, "chi")) => ResponseKind::Chi,
        Some((_, "alpha")) => ResponseKind::Alpha,
        Some((_, "reflection")) => ResponseKind::Reflection,
        Some((_, "sigma_xx")) => ResponseKind::SigmaXx,
        Some((_, "sigma_zz")) => ResponseKind::SigmaZz,
        Some((_, "f")) => ResponseKind::F,
        Some((line, other)) => {
            return Err(err(
                line,
                format!(
                    "unknown response `{other}` (know chi, alpha, reflection, sigma_xx, sigma_zz, f)"
                ),
            ))
        }
    };
    let Some((axis_line, axis_word)) = raw.take("response_axis") else {
        return Err(err_global("response dumps need `response_axis:`"));
    };
    let axis = match axis_word {
        "k" => ResponseAxis::K,
        "xi" => ResponseAxis::Xi,
        "omega" => ResponseAxis::Omega,
        "k_tilde" => ResponseAxis::KTilde,
        "xi_tilde" => ResponseAxis::XiTilde,
        other => {
            return Err(err(
                axis_line,
                format!("unknown response_axis `{other}` (know k, xi, omega, k_tilde, xi_tilde)"),
            ))
        }
    };
    let allowed: &[ResponseAxis] = match kind {
        ResponseKind::Chi | ResponseKind::Alpha | ResponseKind::Reflection => {
            &[ResponseAxis::K, ResponseAxis::Xi]
        }
        ResponseKind::SigmaXx | ResponseKind::SigmaZz => &[ResponseAxis::Omega],
        ResponseKind::F => &[ResponseAxis::KTilde, ResponseAxis::XiTilde],
    };
    if !allowed.contains(&axis) {
        let words: Vec<&str> = allowed.iter().map(|a| a.word()).collect();
        return Err(err(
            axis_line,
            format!(
                "response {} runs over {}, not {}",
                kind.word(),
                words.join(" or "),
                axis.word()
            ),
        ));
    }
    let fixed = ResponseConfig {
        kind,
        axis,
        k: raw.quantity("k", BARE)?,
        xi: raw.quantity("xi", FREQUENCY_UNITS)?,
        omega: raw.quantity("omega", FREQUENCY_UNITS)?,
        k_tilde: raw.quantity("k_tilde", BARE)?,
        xi_tilde: raw.quantity("xi_tilde", BARE)?,
    };
    if let Some((line, _)) = raw.take(axis.word()) {
        return Err(err(
            line,
            format!("`{}` is the response axis; drop the fixed value", axis.word()),
        ));
    }
    Ok(Some(fixed))
}

pub fn axis_units(sweep: Option<AxisKind>, response: Option<&ResponseConfig>) -> &'static [(&'static str, f64)] {
    if let Some(r) = response {
        return match r.axis {
            ResponseAxis::K | ResponseAxis::KTilde | ResponseAxis::XiTilde => BARE,
            ResponseAxis::Xi | ResponseAxis::Omega => FREQUENCY_UNITS,
        };
    }
    match sweep {
        Some(AxisKind::AtomHeight) | Some(AxisKind::Gap) => LENGTH_UNITS,
        Some(AxisKind::Doping) => DOPING_UNITS,
        None => BARE,
    }
}

pub fn parse_scenario(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let raw = collect_entries(text)?;

    let atom = parse_atom(&raw)?;
    let sheet = parse_sheet(&raw)?;
    let substrate = parse_substrate(&raw)?;
    let gap = raw.quantity("gap", LENGTH_UNITS)?.unwrap_or(0.0);
    let z_a = raw.quantity("z_a", LENGTH_UNITS)?;

    let sweep = match raw.take("sweep") {
        None => None,
        Some((_, "z_a")) => Some(AxisKind::AtomHeight),
        Some((_, "gap")) => Some(AxisKind::Gap),
        Some((_, "doping")) => Some(AxisKind::Doping),
        Some((line, other)) => {
            return Err(err(
                line,
                format!("unknown sweep axis `{other}` (know z_a, gap, doping)"),
            ))
        }
    };
    let response = parse_response(&raw)?;
    let grid = parse_grid(&raw, axis_units(sweep, response.as_ref()))?;

    let mode = match raw.take("mode") {
        None | Some((_, "retarded")) => Mode::RetardedKernel,
        Some((_, "nonretarded")) => Mode::FullyNonretarded,
        Some((line, other)) => {
            return Err(err(
                line,
                format!("unknown mode `{other}` (know retarded, nonretarded)"),
            ))
        }
    };

    let rel_tol = raw.quantity("rel_tol", BARE)?;
    if let Some(t) = rel_tol {
        if !(t > 0.0) {
            let (line, _) = raw.take("rel_tol").unwrap();
            return Err(err(line, "rel_tol must be positive"));
        }
    }
    let max_refinements = match raw.take("max_refinements") {
        None => None,
        Some((line, value)) => Some(
            value
                .parse::<usize>()
                .map_err(|_| err(line, format!("`{value}` is not a refinement count")))?,
        ),
    };
    let out = raw.take("out").map(|(_, v)| PathBuf::from(v));

    if let (Some(_), Some(AxisKind::AtomHeight)) = (z_a, sweep) {
        return Err(err_global(
            "config gives both a single z_a and a z_a sweep; pick one",
        ));
    }
    if sweep.is_some() && response.is_some() {
        return Err(err_global("config mixes a sweep with a response dump; pick one"));
    }
    if z_a.is_none() && sweep.is_none() && response.is_none() {
        return Err(err_global("config specifies neither z_a, a sweep, nor a response dump"));
    }
    if (sweep.is_some() || response.is_some()) && grid.is_none() {
        return Err(err_global("sweeps and response dumps need a `grid:`"));
    }
    if sweep.is_none() && response.is_none() && grid.is_some() {
        return Err(err_global("`grid:` without a sweep axis or response dump"));
    }
    if let Some(z) = z_a {
        if !(z > 0.0) {
            return Err(err_global("z_a must be positive"));
        }
    }

    Ok(ScenarioConfig {
        atom,
        sheet,
        substrate,
        gap,
        z_a,
        sweep,
        response,
        grid,
        mode,
        rel_tol,
        max_refinements,
        out,
    })
}

/// Canonical form: every effective value in SI without suffixes, keys in a
/// fixed order. `parse_scenario` of this text reproduces the config exactly.
pub fn serialize_scenario(config: &ScenarioConfig) -> String {
    let mut s = String::new();
    match &config.atom {
        AtomSource::Fixture(path) => {
            let _ = writeln!(s, "atom: {}", path.display());
        }
        AtomSource::Inline {
            name,
            state,
            transitions,
        } => {
            let _ = writeln!(s, "atom_name: {name}");
            let _ = writeln!(s, "atom_state: {state}");
            for (omega, d2) in transitions {
                let _ = writeln!(s, "transition: {omega}, {d2}");
            }
        }
    }
    match &config.sheet {
        None => {
            let _ = writeln!(s, "sheet: none");
        }
        Some(sheet) => {
            let _ = writeln!(s, "sheet: {}", sheet.kind.word());
            if let Some(n) = sheet.doping {
                let _ = writeln!(s, "doping: {n}");
            }
            let _ = writeln!(s, "v_fermi: {}", sheet.v_fermi);
            match sheet.kind {
                SheetKind::Undoped | SheetKind::Doped => {
                    let _ = writeln!(s, "degeneracy: {}", sheet.degeneracy);
                }
                SheetKind::Bilayer => {
                    let _ = writeln!(s, "gamma_hop: {}", sheet.gamma_hop);
                    let _ = writeln!(s, "d_layer: {}", sheet.d_layer);
                }
                SheetKind::Perfect => {}
            }
        }
    }
    match &config.substrate {
        SubstrateConfig::Vacuum => {
            let _ = writeln!(s, "substrate: vacuum");
        }
        SubstrateConfig::PerfectConductor => {
            let _ = writeln!(s, "substrate: perfect-conductor");
        }
        SubstrateConfig::Drude { omega_pe, gamma_e } => {
            let _ = writeln!(s, "substrate: drude");
            let _ = writeln!(s, "omega_pe: {omega_pe}");
            let _ = writeln!(s, "gamma_e: {gamma_e}");
        }
    }
    let _ = writeln!(s, "gap: {}", config.gap);
    if let Some(z) = config.z_a {
        let _ = writeln!(s, "z_a: {z}");
    }
    if let Some(axis) = config.sweep {
        let _ = writeln!(s, "sweep: {}", axis.word());
    }
    if let Some(r) = &config.response {
        let _ = writeln!(s, "response: {}", r.kind.word());
        let _ = writeln!(s, "response_axis: {}", r.axis.word());
        for (key, value) in [
            ("k", r.k),
            ("xi", r.xi),
            ("omega", r.omega),
            ("k_tilde", r.k_tilde),
            ("xi_tilde", r.xi_tilde),
        ] {
            if let Some(v) = value {
                let _ = writeln!(s, "{key}: {v}");
            }
        }
    }
    if let Some(g) = &config.grid {
        let _ = writeln!(
            s,
            "grid: {}, {}, {}, {}",
            g.lo,
            g.hi,
            g.count,
            if g.log { "log" } else { "lin" }
        );
    }
    let _ = writeln!(
        s,
        "mode: {}",
        match config.mode {
            Mode::RetardedKernel => "retarded",
            Mode::FullyNonretarded => "nonretarded",
        }
    );
    if let Some(t) = config.rel_tol {
        let _ = writeln!(s, "rel_tol: {t}");
    }
    if let Some(n) = config.max_refinements {
        let _ = writeln!(s, "max_refinements: {n}");
    }
    if let Some(out) = &config.out {
        let _ = writeln!(s, "out: {}", out.display());
    }
    s
}
