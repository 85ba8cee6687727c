//! Subcommand bodies. Config errors exit 1, numerical failures exit 2;
//! sweeps and dumps keep going after a bad row and flag it in the `error`
//! column instead of aborting the file.

use std::path::{Path, PathBuf};

use cpshield::constants::{DEGENERACY_DEFAULT, V_FERMI_DEFAULT};
use cpshield::{
    bilayer_sigma_xx, bilayer_sigma_zz, chi_doped, chi_undoped, f_doped, load_atom_fixture,
    sheet_alpha, stack_reflection, sweep, total_potential, AtomModel, LayerStack, Mode,
    QuadratureSpec, Scenario, SheetResponse, SubstrateModel, SweepAxis, Transition,
};

use crate::config::{
    parse_scenario, serialize_scenario, AtomSource, AxisKind, ConfigError, ResponseAxis,
    ResponseConfig, ResponseKind, ScenarioConfig, SheetConfig, SheetKind, SubstrateConfig,
};
use crate::output::{fnv1a64, CsvDoc};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config: {m}"),
            CliError::Numerical(m) => write!(f, "numerical: {m}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<cpshield::Error> for CliError {
    fn from(e: cpshield::Error) -> Self {
        match e {
            cpshield::Error::InvalidInput(_) | cpshield::Error::FixtureParse { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Numerical(other.to_string()),
        }
    }
}

pub struct Loaded {
    pub config: ScenarioConfig,
    pub dir: PathBuf,
    pub hash: u64,
    pub out: Option<PathBuf>,
}

pub fn load(path: &Path, out: Option<PathBuf>, tol: Option<f64>) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut config = parse_scenario(&text)?;
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Config("--tol must be positive".into()));
        }
        config.rel_tol = Some(t);
    }
    let hash = fnv1a64(serialize_scenario(&config).as_bytes());
    let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let out = out.or_else(|| config.out.as_ref().map(|o| resolve(&dir, o)));
    Ok(Loaded {
        config,
        dir,
        hash,
        out,
    })
}

fn resolve(dir: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        dir.join(path)
    }
}

fn build_atom(loaded: &Loaded) -> Result<AtomModel, CliError> {
    match &loaded.config.atom {
        AtomSource::Fixture(path) => {
            let path = resolve(&loaded.dir, path);
            let file = std::fs::File::open(&path).map_err(|e| {
                CliError::Config(format!("cannot open atom fixture {}: {e}", path.display()))
            })?;
            Ok(load_atom_fixture(file)?)
        }
        AtomSource::Inline {
            name,
            state,
            transitions,
        } => {
            let transitions = transitions
                .iter()
                .map(|&(omega, d2)| Transition { omega, d2 })
                .collect();
            Ok(AtomModel::new(name.clone(), state.clone(), transitions)?)
        }
    }
}

fn build_sheet(sheet: &SheetConfig) -> Result<SheetResponse, CliError> {
    Ok(match sheet.kind {
        SheetKind::Undoped => SheetResponse::undoped(sheet.v_fermi, sheet.degeneracy)?,
        SheetKind::Doped => SheetResponse::doped(
            sheet.doping.expect("doped sheet was validated at parse"),
            sheet.v_fermi,
            sheet.degeneracy,
        )?,
        SheetKind::Bilayer => {
            SheetResponse::bilayer(sheet.gamma_hop, sheet.d_layer, sheet.v_fermi)?
        }
        SheetKind::Perfect => SheetResponse::perfect(),
    })
}

fn build_substrate(substrate: &SubstrateConfig) -> Result<SubstrateModel, CliError> {
    Ok(match substrate {
        SubstrateConfig::Vacuum => SubstrateModel::Vacuum,
        SubstrateConfig::PerfectConductor => SubstrateModel::PerfectConductor,
        SubstrateConfig::Drude { omega_pe, gamma_e } => {
            SubstrateModel::drude(*omega_pe, *gamma_e)?
        }
    })
}

fn build_stack(loaded: &Loaded) -> Result<LayerStack, CliError> {
    let sheet = loaded
        .config
        .sheet
        .as_ref()
        .map(build_sheet)
        .transpose()?;
    let substrate = build_substrate(&loaded.config.substrate)?;
    Ok(LayerStack::new(sheet, loaded.config.gap, substrate)?)
}

fn quad_spec(config: &ScenarioConfig) -> QuadratureSpec {
    let mut spec = QuadratureSpec::default();
    if let Some(t) = config.rel_tol {
        spec.rel_tol = t;
    }
    if let Some(n) = config.max_refinements {
        spec.max_refinements = n;
    }
    spec
}

fn require_z_a(config: &ScenarioConfig) -> Result<f64, CliError> {
    config
        .z_a
        .ok_or_else(|| CliError::Config("this run needs a `z_a:` value".into()))
}

fn fmt(v: f64) -> String {
    format!("{v:e}")
}

pub fn potential(config_path: &Path, out: Option<PathBuf>, tol: Option<f64>) -> Result<(), CliError> {
    let loaded = load(config_path, out, tol)?;
    if loaded.config.sweep.is_some() {
        return Err(CliError::Config(
            "config declares a sweep; run the sweep subcommand".into(),
        ));
    }
    if loaded.config.response.is_some() {
        return Err(CliError::Config(
            "config declares a response dump; run the response subcommand".into(),
        ));
    }
    let z_a = require_z_a(&loaded.config)?;
    let quad = quad_spec(&loaded.config);
    let scenario = Scenario::new(build_atom(&loaded)?, build_stack(&loaded)?, z_a)?
        .with_mode(loaded.config.mode)
        .with_quad(quad.clone());
    let result = total_potential(&scenario)?;
    let doc = CsvDoc {
        subcommand: "potential",
        config_hash: loaded.hash,
        quad,
        columns: &[
            "z_a_m",
            "u_over_hbar_rad_per_s",
            "u_joule",
            "nonresonant_rad_per_s",
            "resonant_rad_per_s",
            "err_estimate_rad_per_s",
        ],
        rows: vec![vec![
            fmt(z_a),
            fmt(result.u_over_hbar),
            fmt(result.u_joule),
            fmt(result.nonresonant),
            fmt(result.resonant),
            fmt(result.err_estimate),
        ]],
    };
    doc.write(loaded.out.as_deref())
        .map_err(|e| CliError::Numerical(format!("cannot write output: {e}")))
}

pub fn sweep_cmd(config_path: &Path, out: Option<PathBuf>, tol: Option<f64>) -> Result<(), CliError> {
    let loaded = load(config_path, out, tol)?;
    let Some(axis) = loaded.config.sweep else {
        return Err(CliError::Config(
            "config declares no sweep; add `sweep:` and `grid:`".into(),
        ));
    };
    let grid = loaded
        .config
        .grid
        .as_ref()
        .expect("sweep without grid is rejected at parse")
        .points();
    let quad = quad_spec(&loaded.config);

    // A z_a sweep still needs a template height before the axis overwrites
    // it; any grid value works.
    let z_template = match axis {
        AxisKind::AtomHeight => grid[0],
        _ => require_z_a(&loaded.config)?,
    };
    let template = Scenario::new(build_atom(&loaded)?, build_stack(&loaded)?, z_template)?
        .with_mode(loaded.config.mode)
        .with_quad(quad.clone());
    let core_axis = match axis {
        AxisKind::AtomHeight => SweepAxis::AtomHeight,
        AxisKind::Gap => SweepAxis::GapWidth,
        AxisKind::Doping => SweepAxis::Doping,
    };
    let rows = sweep(&template, core_axis, &grid)?;

    let axis_column = match axis {
        AxisKind::AtomHeight => "z_a_m",
        AxisKind::Gap => "gap_m",
        AxisKind::Doping => "doping_per_m2",
    };
    let mut failed = 0usize;
    let csv_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|row| match &row.result {
            Ok(r) => vec![
                fmt(row.axis_value),
                fmt(r.u_over_hbar),
                fmt(r.u_joule),
                fmt(r.nonresonant),
                fmt(r.resonant),
                fmt(r.err_estimate),
                row.ratio.map(fmt).unwrap_or_default(),
                String::new(),
            ],
            Err(e) => {
                failed += 1;
                let mut row_out = vec![fmt(row.axis_value)];
                row_out.extend(std::iter::repeat_n(String::new(), 6));
                row_out.push(e.to_string().replace(',', ";"));
                row_out
            }
        })
        .collect();

    static COLUMNS_Z: &[&str] = &[
        "z_a_m",
        "u_over_hbar_rad_per_s",
        "u_joule",
        "nonresonant_rad_per_s",
        "resonant_rad_per_s",
        "err_estimate_rad_per_s",
        "ratio",
        "error",
    ];
    static COLUMNS_GAP: &[&str] = &[
        "gap_m",
        "u_over_hbar_rad_per_s",
        "u_joule",
        "nonresonant_rad_per_s",
        "resonant_rad_per_s",
        "err_estimate_rad_per_s",
        "ratio",
        "error",
    ];
    static COLUMNS_DOPING: &[&str] = &[
        "doping_per_m2",
        "u_over_hbar_rad_per_s",
        "u_joule",
        "nonresonant_rad_per_s",
        "resonant_rad_per_s",
        "err_estimate_rad_per_s",
        "ratio",
        "error",
    ];
    let columns = match axis_column {
        "z_a_m" => COLUMNS_Z,
        "gap_m" => COLUMNS_GAP,
        _ => COLUMNS_DOPING,
    };

    let doc = CsvDoc {
        subcommand: "sweep",
        config_hash: loaded.hash,
        quad,
        columns,
        rows: csv_rows,
    };
    doc.write(loaded.out.as_deref())
        .map_err(|e| CliError::Numerical(format!("cannot write output: {e}")))?;
    if failed > 0 {
        return Err(CliError::Numerical(format!(
            "{failed} of {} sweep rows failed; see the error column",
            rows.len()
        )));
    }
    Ok(())
}

pub fn ratio(config_path: &Path, out: Option<PathBuf>, tol: Option<f64>) -> Result<(), CliError> {
    let loaded = load(config_path, out, tol)?;
    if loaded.config.sweep != Some(AxisKind::Gap) {
        return Err(CliError::Config(
            "ratio runs over the sheet-substrate gap; set `sweep: gap` and `grid:`".into(),
        ));
    }
    let Some(sheet_config) = &loaded.config.sheet else {
        return Err(CliError::Config(
            "ratio needs a sheet; the bare substrate has nothing to shield".into(),
        ));
    };
    let z_a = require_z_a(&loaded.config)?;
    let quad = quad_spec(&loaded.config);
    let atom = build_atom(&loaded)?;
    let sheet = build_sheet(sheet_config)?;
    let substrate = build_substrate(&loaded.config.substrate)?;

    let alone = Scenario::new(atom.clone(), LayerStack::bare_sheet(sheet.clone()), z_a)?
        .with_mode(loaded.config.mode)
        .with_quad(quad.clone());
    let u_alone = total_potential(&alone)?.u_over_hbar;
    if u_alone == 0.0 {
        return Err(CliError::Numerical(
            "sheet-alone potential is zero; ratio undefined".into(),
        ));
    }

    let grid = loaded
        .config
        .grid
        .as_ref()
        .expect("sweep without grid is rejected at parse")
        .points();
    let mut failed = 0usize;
    let rows: Vec<Vec<String>> = grid
        .iter()
        .map(|&gap| {
            let composite = LayerStack::new(Some(sheet.clone()), gap, substrate.clone())
                .and_then(|stack| Scenario::new(atom.clone(), stack, z_a))
                .map(|s| s.with_mode(loaded.config.mode).with_quad(quad.clone()));
            match composite.and_then(|s| total_potential(&s)) {
                Ok(r) => vec![fmt(gap), fmt(r.u_over_hbar / u_alone), String::new()],
                Err(e) => {
                    failed += 1;
                    vec![fmt(gap), String::new(), e.to_string().replace(',', ";")]
                }
            }
        })
        .collect();

    let total = rows.len();
    let doc = CsvDoc {
        subcommand: "ratio",
        config_hash: loaded.hash,
        quad,
        columns: &["gap_m", "ratio", "error"],
        rows,
    };
    doc.write(loaded.out.as_deref())
        .map_err(|e| CliError::Numerical(format!("cannot write output: {e}")))?;
    if failed > 0 {
        return Err(CliError::Numerical(format!(
            "{failed} of {total} ratio rows failed; see the error column"
        )));
    }
    Ok(())
}

fn response_row(
    loaded: &Loaded,
    r: &ResponseConfig,
    value: f64,
) -> (Vec<String>, Result<Vec<f64>, cpshield::Error>) {
    let sheet = loaded.config.sheet.as_ref();
    let (k, xi) = match r.axis {
        ResponseAxis::K => (value, r.xi.unwrap_or(0.0)),
        ResponseAxis::Xi => (r.k.unwrap_or(0.0), value),
        _ => (0.0, 0.0),
    };
    match r.kind {
        ResponseKind::Chi => {
            let result = match sheet {
                Some(SheetConfig {
                    kind: SheetKind::Undoped,
                    v_fermi,
                    degeneracy,
                    ..
                }) => chi_undoped(k, xi, *v_fermi, *degeneracy),
                Some(SheetConfig {
                    kind: SheetKind::Doped,
                    doping,
                    v_fermi,
                    degeneracy,
                    ..
                }) => chi_doped(k, xi, doping.unwrap(), *v_fermi, *degeneracy),
                _ => Err(cpshield::Error::InvalidInput(
                    "chi dumps need sheet: undoped or doped".into(),
                )),
            };
            (vec![fmt(k), fmt(xi)], result.map(|v| vec![v]))
        }
        ResponseKind::Alpha => {
            let result = match sheet.map(build_sheet) {
                Some(Ok(s)) => sheet_alpha(&s, k, xi),
                Some(Err(CliError::Config(m))) | Some(Err(CliError::Numerical(m))) => {
                    Err(cpshield::Error::InvalidInput(m))
                }
                None => Err(cpshield::Error::InvalidInput(
                    "alpha dumps need a sheet".into(),
                )),
            };
            (vec![fmt(k), fmt(xi)], result.map(|v| vec![v]))
        }
        ResponseKind::Reflection => {
            let result = build_stack(loaded)
                .map_err(|e| cpshield::Error::InvalidInput(e.to_string()))
                .and_then(|stack| stack_reflection(&stack, k, xi))
                .map(|pair| vec![pair.r_tm, pair.r_te]);
            (vec![fmt(k), fmt(xi)], result)
        }
        ResponseKind::SigmaXx | ResponseKind::SigmaZz => {
            let omega = value;
            let result = match sheet {
                Some(SheetConfig {
                    kind: SheetKind::Bilayer,
                    gamma_hop,
                    d_layer,
                    v_fermi,
                    ..
                }) => {
                    if r.kind == ResponseKind::SigmaXx {
                        bilayer_sigma_xx(omega, *gamma_hop)
                    } else {
                        bilayer_sigma_zz(omega, *gamma_hop, *d_layer, *v_fermi)
                    }
                }
                _ => Err(cpshield::Error::InvalidInput(
                    "conductivity dumps need sheet: bilayer".into(),
                )),
            };
            (vec![fmt(omega)], result.map(|v| vec![v]))
        }
        ResponseKind::F => {
            let (kt, xt) = match r.axis {
                ResponseAxis::KTilde => (value, r.xi_tilde.unwrap_or(0.0)),
                _ => (r.k_tilde.unwrap_or(0.0), value),
            };
            let result = if kt > 0.0 && xt >= 0.0 {
                let f = f_doped(kt, xt);
                Ok(vec![f.re, f.im])
            } else {
                Err(cpshield::Error::Domain(format!(
                    "f needs k_tilde > 0 and xi_tilde >= 0; got {kt:e}, {xt:e}"
                )))
            };
            (vec![fmt(kt), fmt(xt)], result)
        }
    }
}

pub fn response(config_path: &Path, out: Option<PathBuf>, tol: Option<f64>) -> Result<(), CliError> {
    let loaded = load(config_path, out, tol)?;
    let Some(r) = loaded.config.response.clone() else {
        return Err(CliError::Config(
            "config declares no response dump; add `response:` keys".into(),
        ));
    };
    let (columns, value_width): (&'static [&'static str], usize) = match r.kind {
        ResponseKind::Chi => (&["k_per_m", "xi_rad_per_s", "chi_per_joule_m2", "error"], 1),
        ResponseKind::Alpha => (&["k_per_m", "xi_rad_per_s", "alpha", "error"], 1),
        ResponseKind::Reflection => (&["k_per_m", "xi_rad_per_s", "r_tm", "r_te", "error"], 2),
        ResponseKind::SigmaXx => (&["omega_rad_per_s", "sigma_xx_siemens", "error"], 1),
        ResponseKind::SigmaZz => (&["omega_rad_per_s", "sigma_zz_siemens", "error"], 1),
        ResponseKind::F => (&["k_tilde", "xi_tilde", "f_re", "f_im", "error"], 2),
    };
    let grid = loaded
        .config
        .grid
        .as_ref()
        .expect("response without grid is rejected at parse")
        .points();
    let mut failed = 0usize;
    let rows: Vec<Vec<String>> = grid
        .iter()
        .map(|&value| {
            let (mut row, result) = response_row(&loaded, &r, value);
            match result {
                Ok(values) => {
                    row.extend(values.iter().map(|&v| fmt(v)));
                    row.push(String::new());
                }
                Err(e) => {
                    failed += 1;
                    row.extend(std::iter::repeat_n(String::new(), value_width));
                    row.push(e.to_string().replace(',', ";"));
                }
            }
            row
        })
        .collect();

    let total = rows.len();
    let doc = CsvDoc {
        subcommand: "response",
        config_hash: loaded.hash,
        quad: quad_spec(&loaded.config),
        columns,
        rows,
    };
    doc.write(loaded.out.as_deref())
        .map_err(|e| CliError::Numerical(format!("cannot write output: {e}")))?;
    if failed > 0 {
        return Err(CliError::Numerical(format!(
            "{failed} of {total} response rows failed; see the error column"
        )));
    }
    Ok(())
}

const RB_GROUND_FIXTURE: &str = include_str!("../../core/fixtures/rb_ground.atom");
const TABLE1_REFERENCES: [(&str, f64, f64); 5] = [
    ("undoped", 0.0, -90.987),
    ("doped_1e14", 1e14, -121.940),
    ("doped_1e15", 1e15, -165.489),
    ("doped_1e16", 1e16, -244.768),
    ("doped_1e17", 1e17, -371.140),
];

pub fn table1(out: Option<PathBuf>, tol: Option<f64>) -> Result<(), CliError> {
    let mut quad = QuadratureSpec::default();
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Config("--tol must be positive".into()));
        }
        quad.rel_tol = t;
    }
    let atom = load_atom_fixture(RB_GROUND_FIXTURE.as_bytes())?;
    let mut rows = Vec::new();
    for (label, doping, reference) in TABLE1_REFERENCES {
        let sheet = if doping == 0.0 {
            SheetResponse::undoped(V_FERMI_DEFAULT, DEGENERACY_DEFAULT)?
        } else {
            SheetResponse::doped(doping, V_FERMI_DEFAULT, DEGENERACY_DEFAULT)?
        };
        let stack = LayerStack::bare_sheet(sheet);
        let mut values = [0.0; 2];
        for (slot, mode) in values
            .iter_mut()
            .zip([Mode::RetardedKernel, Mode::FullyNonretarded])
        {
            let s = Scenario::new(atom.clone(), stack.clone(), 1e-6)?
                .with_mode(mode)
                .with_quad(quad.clone());
            *slot = total_potential(&s)?.u_over_hbar;
        }
        rows.push(vec![
            label.to_string(),
            fmt(doping),
            fmt(values[0]),
            fmt(values[1]),
            fmt(reference),
        ]);
    }
    let doc = CsvDoc {
        subcommand: "table1",
        config_hash: fnv1a64(RB_GROUND_FIXTURE.as_bytes()),
        quad,
        columns: &[
            "label",
            "doping_per_m2",
            "u_retarded_rad_per_s",
            "u_nonretarded_rad_per_s",
            "reference_rad_per_s",
        ],
        rows,
    };
    doc.write(out.as_deref())
        .map_err(|e| CliError::Numerical(format!("cannot write output: {e}")))
}
