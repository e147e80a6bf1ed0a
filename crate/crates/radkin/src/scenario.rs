//! Scenario configuration: a single TOML file selects one of the five
//! canonical experiments and its parameters.
//!
//! ```toml
//! scenario = "cold-oscillation"
//!
//! [params]
//! omega_p_tau = 1e-3
//! grid = [256, 256]
//! ```
//!
//! Validation is strict and total: unknown scenario names, unknown keys
//! (catching typos in physics parameters), type mismatches, and
//! out-of-range values are all reported together, not one at a time.
//! Every parameter has a documented default; the full schema is listed in
//! the README. Ranges: `omega_p_tau` in `[0, 0.1]` (0 disables radiation
//! reaction), closure order in `{0, 1, 2}`, grid counts at least 8.

use crate::vlasov::SlopeMode;
use std::fmt::Write as _;
use toml::Value;

/// One fully validated scenario.
#[derive(Clone, Debug, PartialEq)]
pub enum Scenario {
    Runaway(RunawayParams),
    PusherCompare(PusherCompareParams),
    ColdOscillation(ColdOscillationParams),
    DispersionScan(DispersionScanParams),
    EntropyBudget(EntropyBudgetParams),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunawayParams {
    /// Radiation-reaction timescale (sets the runaway rate 1/tau).
    pub tau: f64,
    /// Initial proper acceleration.
    pub g0: f64,
    /// Run length in units of tau.
    pub lambda_end_over_tau: f64,
    /// Integrator step in units of tau.
    pub step_over_tau: f64,
    pub q_over_m: f64,
}

impl Default for RunawayParams {
    fn default() -> Self {
        RunawayParams {
            tau: 0.1,
            g0: 1.0,
            lambda_end_over_tau: 5.0,
            step_over_tau: 2.5e-3,
            q_over_m: -1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PusherCompareParams {
    /// Largest tau of the halving sequence (omega_p tau in normalized units).
    pub tau: f64,
    /// Uniform field strength (z electric component).
    pub e0: f64,
    /// Initial velocity transverse to the field. A parallel start is
    /// exactly hyperbolic, for which all three pushers coincide.
    pub v0_perp: f64,
    pub lambda_end: f64,
    pub step: f64,
    /// Number of tau halvings in the scaling fit.
    pub halvings: usize,
    pub q_over_m: f64,
}

impl Default for PusherCompareParams {
    fn default() -> Self {
        PusherCompareParams {
            tau: 1e-2,
            e0: 0.1,
            v0_perp: 0.3,
            lambda_end: 1.0,
            step: 2e-3,
            halvings: 3,
            q_over_m: -1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColdOscillationParams {
    pub omega_p_tau: f64,
    /// `[nz, nv]`.
    pub grid: [usize; 2],
    pub v_max: f64,
    /// Density perturbation amplitude.
    pub amplitude: f64,
    /// Run length in plasma periods.
    pub periods: f64,
    pub cfl: f64,
    pub closure_order: u32,
    pub slope: SlopeMode,
    /// Spatial harmonic of the perturbation.
    pub k_mode: usize,
    /// Write the final distribution snapshot as CSV.
    pub snapshot_final: bool,
}

impl Default for ColdOscillationParams {
    fn default() -> Self {
        ColdOscillationParams {
            omega_p_tau: 1e-3,
            grid: [256, 256],
            v_max: 0.35,
            amplitude: 1e-5,
            periods: 20.0,
            cfl: 0.4,
            closure_order: 1,
            slope: SlopeMode::Central,
            k_mode: 1,
            snapshot_final: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DispersionScanParams {
    pub k_list: Vec<f64>,
    pub tau_list: Vec<f64>,
    pub n0: f64,
    /// Thermal spread of the Maxwellian background; 0 selects the cold
    /// closed form.
    pub vth: f64,
    pub q_over_m: f64,
    pub mass: f64,
}

impl Default for DispersionScanParams {
    fn default() -> Self {
        DispersionScanParams {
            k_list: vec![0.0],
            tau_list: vec![1e-4, 1e-3, 1e-2],
            n0: 1.0,
            vth: 0.0,
            q_over_m: -1.0,
            mass: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyBudgetParams {
    pub omega_p_tau: f64,
    pub grid: [usize; 2],
    pub v_max: f64,
    pub amplitude: f64,
    /// Plasma periods to evolve before taking the budget snapshot.
    pub settle_periods: f64,
    pub cfl: f64,
    pub closure_order: u32,
    pub slope: SlopeMode,
    pub k_mode: usize,
}

impl Default for EntropyBudgetParams {
    fn default() -> Self {
        EntropyBudgetParams {
            omega_p_tau: 1e-3,
            grid: [64, 64],
            v_max: 0.35,
            amplitude: 1e-3,
            settle_periods: 2.0,
            cfl: 0.4,
            closure_order: 1,
            slope: SlopeMode::Central,
            k_mode: 1,
        }
    }
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Runaway(_) => "runaway",
            Scenario::PusherCompare(_) => "pusher-compare",
            Scenario::ColdOscillation(_) => "cold-oscillation",
            Scenario::DispersionScan(_) => "dispersion-scan",
            Scenario::EntropyBudget(_) => "entropy-budget",
        }
    }

    /// Parse and validate a configuration document, reporting every
    /// problem found.
    pub fn from_toml_str(text: &str) -> Result<Scenario, Vec<String>> {
        let table: toml::Table = text
            .parse()
            .map_err(|e| vec![format!("TOML syntax error: {e}")])?;
        Self::from_table(table)
    }

    /// Same, but with `key=value` overrides applied before validation
    /// (dotted paths, e.g. `params.amplitude=1e-4`).
    pub fn from_toml_with_overrides(
        text: &str,
        overrides: &[String],
    ) -> Result<Scenario, Vec<String>> {
        let mut table: toml::Table = text
            .parse()
            .map_err(|e| vec![format!("TOML syntax error: {e}")])?;
        let mut errors = Vec::new();
        for ov in overrides {
            if let Err(e) = apply_override(&mut table, ov) {
                errors.push(e);
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        Self::from_table(table)
    }

    fn from_table(table: toml::Table) -> Result<Scenario, Vec<String>> {
        let mut v = Validator::new();
        let name = v.top_string(&table, "scenario");
        let params = match table.get("params") {
            Some(Value::Table(t)) => t.clone(),
            Some(_) => {
                v.errors.push("`params` must be a table".to_string());
                toml::Table::new()
            }
            None => toml::Table::new(),
        };
        for key in table.keys() {
            if key != "scenario" && key != "params" {
                v.errors.push(format!("unknown top-level key `{key}`"));
            }
        }
        let scenario = match name.as_deref() {
            Some("runaway") => Some(Scenario::Runaway(parse_runaway(&params, &mut v))),
            Some("pusher-compare") => Some(Scenario::PusherCompare(parse_pusher_compare(
                &params, &mut v,
            ))),
            Some("cold-oscillation") => Some(Scenario::ColdOscillation(parse_cold_oscillation(
                &params, &mut v,
            ))),
            Some("dispersion-scan") => Some(Scenario::DispersionScan(parse_dispersion_scan(
                &params, &mut v,
            ))),
            Some("entropy-budget") => Some(Scenario::EntropyBudget(parse_entropy_budget(
                &params, &mut v,
            ))),
            Some(other) => {
                v.errors.push(format!(
                    "unknown scenario `{other}` (expected one of: runaway, pusher-compare, \
                     cold-oscillation, dispersion-scan, entropy-budget)"
                ));
                None
            }
            None => None,
        };
        match scenario {
            Some(s) if v.errors.is_empty() => Ok(s),
            _ => Err(v.errors),
        }
    }

    /// Canonical TOML form; `from_toml_str` round-trips it.
    pub fn to_toml_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario = \"{}\"", self.name());
        let _ = writeln!(s);
        let _ = writeln!(s, "[params]");
        match self {
            Scenario::Runaway(p) => {
                let _ = writeln!(s, "tau = {:e}", p.tau);
                let _ = writeln!(s, "g0 = {:e}", p.g0);
                let _ = writeln!(s, "lambda_end_over_tau = {:e}", p.lambda_end_over_tau);
                let _ = writeln!(s, "step_over_tau = {:e}", p.step_over_tau);
                let _ = writeln!(s, "q_over_m = {:e}", p.q_over_m);
            }
            Scenario::PusherCompare(p) => {
                let _ = writeln!(s, "tau = {:e}", p.tau);
                let _ = writeln!(s, "e0 = {:e}", p.e0);
                let _ = writeln!(s, "v0_perp = {:e}", p.v0_perp);
                let _ = writeln!(s, "lambda_end = {:e}", p.lambda_end);
                let _ = writeln!(s, "step = {:e}", p.step);
                let _ = writeln!(s, "halvings = {}", p.halvings);
                let _ = writeln!(s, "q_over_m = {:e}", p.q_over_m);
            }
            Scenario::ColdOscillation(p) => {
                let _ = writeln!(s, "omega_p_tau = {:e}", p.omega_p_tau);
                let _ = writeln!(s, "grid = [{}, {}]", p.grid[0], p.grid[1]);
                let _ = writeln!(s, "v_max = {:e}", p.v_max);
                let _ = writeln!(s, "amplitude = {:e}", p.amplitude);
                let _ = writeln!(s, "periods = {:e}", p.periods);
                let _ = writeln!(s, "cfl = {:e}", p.cfl);
                let _ = writeln!(s, "closure_order = {}", p.closure_order);
                let _ = writeln!(s, "slope = \"{}\"", slope_name(p.slope));
                let _ = writeln!(s, "k_mode = {}", p.k_mode);
                let _ = writeln!(s, "snapshot_final = {}", p.snapshot_final);
            }
            Scenario::DispersionScan(p) => {
                let _ = writeln!(s, "k_list = {}", float_list(&p.k_list));
                let _ = writeln!(s, "tau_list = {}", float_list(&p.tau_list));
                let _ = writeln!(s, "n0 = {:e}", p.n0);
                let _ = writeln!(s, "vth = {:e}", p.vth);
                let _ = writeln!(s, "q_over_m = {:e}", p.q_over_m);
                let _ = writeln!(s, "mass = {:e}", p.mass);
            }
            Scenario::EntropyBudget(p) => {
                let _ = writeln!(s, "omega_p_tau = {:e}", p.omega_p_tau);
                let _ = writeln!(s, "grid = [{}, {}]", p.grid[0], p.grid[1]);
                let _ = writeln!(s, "v_max = {:e}", p.v_max);
                let _ = writeln!(s, "amplitude = {:e}", p.amplitude);
                let _ = writeln!(s, "settle_periods = {:e}", p.settle_periods);
                let _ = writeln!(s, "cfl = {:e}", p.cfl);
                let _ = writeln!(s, "closure_order = {}", p.closure_order);
                let _ = writeln!(s, "slope = \"{}\"", slope_name(p.slope));
                let _ = writeln!(s, "k_mode = {}", p.k_mode);
            }
        }
        s
    }
}

fn slope_name(s: SlopeMode) -> &'static str {
    match s {
        SlopeMode::VanLeer => "van-leer",
        SlopeMode::Central => "central",
    }
}

fn float_list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|x| format!("{x:e}")).collect();
    format!("[{}]", items.join(", "))
}

fn apply_override(table: &mut toml::Table, spec: &str) -> Result<(), String> {
    let (path, raw) = spec
        .split_once('=')
        .ok_or_else(|| format!("override `{spec}` must have the form key=value"))?;
    let value = parse_value(raw.trim())?;
    let parts: Vec<&str> = path.trim().split('.').collect();
    let mut current = table;
    for (i, part) in parts.iter().enumerate() {
        if i + 1 == parts.len() {
            current.insert(part.to_string(), value);
            return Ok(());
        }
        current = current
            .entry(part.to_string())
            .or_insert_with(|| Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| format!("override path `{path}` crosses a non-table value"))?;
    }
    unreachable!()
}

fn parse_value(raw: &str) -> Result<Value, String> {
    let doc = format!("v = {raw}");
    if let Ok(t) = doc.parse::<toml::Table>() {
        return Ok(t["v"].clone());
    }
    // bare strings come without quotes on the command line
    Ok(Value::String(raw.to_string()))
}

struct Validator {
    errors: Vec<String>,
}

impl Validator {
    fn new() -> Self {
        Validator { errors: Vec::new() }
    }

    fn top_string(&mut self, table: &toml::Table, key: &str) -> Option<String> {
        match table.get(key) {
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => {
                self.errors.push(format!("`{key}` must be a string"));
                None
            }
            None => {
                self.errors.push(format!("missing required key `{key}`"));
                None
            }
        }
    }

    fn check_unknown(&mut self, params: &toml::Table, known: &[&str]) {
        for key in params.keys() {
            if !known.contains(&key.as_str()) {
                self.errors
                    .push(format!("unknown parameter `params.{key}`"));
            }
        }
    }

    fn f64_in(
        &mut self,
        params: &toml::Table,
        key: &str,
        default: f64,
        lo: f64,
        hi: f64,
        lo_exclusive: bool,
    ) -> f64 {
        let val = match params.get(key) {
            None => return default,
            Some(Value::Float(f)) => *f,
            Some(Value::Integer(i)) => *i as f64,
            Some(_) => {
                self.errors.push(format!("`params.{key}` must be a number"));
                return default;
            }
        };
        let lo_ok = if lo_exclusive { val > lo } else { val >= lo };
        if !lo_ok || val > hi {
            let bracket = if lo_exclusive { "(" } else { "[" };
            self.errors.push(format!(
                "`params.{key}` = {val} out of range {bracket}{lo}, {hi}]"
            ));
            return default;
        }
        val
    }

    fn usize_in(
        &mut self,
        params: &toml::Table,
        key: &str,
        default: usize,
        lo: usize,
        hi: usize,
    ) -> usize {
        let val = match params.get(key) {
            None => return default,
            Some(Value::Integer(i)) if *i >= 0 => *i as usize,
            Some(_) => {
                self.errors
                    .push(format!("`params.{key}` must be a nonnegative integer"));
                return default;
            }
        };
        if val < lo || val > hi {
            self.errors
                .push(format!("`params.{key}` = {val} out of range [{lo}, {hi}]"));
            return default;
        }
        val
    }

    fn bool_or(&mut self, params: &toml::Table, key: &str, default: bool) -> bool {
        match params.get(key) {
            None => default,
            Some(Value::Boolean(b)) => *b,
            Some(_) => {
                self.errors
                    .push(format!("`params.{key}` must be a boolean"));
                default
            }
        }
    }

    fn grid2(&mut self, params: &toml::Table, key: &str, default: [usize; 2]) -> [usize; 2] {
        match params.get(key) {
            None => default,
            Some(Value::Array(a)) if a.len() == 2 => {
                let mut out = default;
                for (i, item) in a.iter().enumerate() {
                    match item {
                        Value::Integer(n) if *n >= 8 => out[i] = *n as usize,
                        _ => {
                            self.errors
                                .push(format!("`params.{key}[{i}]` must be an integer >= 8"));
                        }
                    }
                }
                out
            }
            Some(_) => {
                self.errors
                    .push(format!("`params.{key}` must be a 2-element array [nz, nv]"));
                default
            }
        }
    }

    fn float_list(
        &mut self,
        params: &toml::Table,
        key: &str,
        default: &[f64],
        lo: f64,
        hi: f64,
        lo_exclusive: bool,
    ) -> Vec<f64> {
        match params.get(key) {
            None => default.to_vec(),
            Some(Value::Array(a)) if !a.is_empty() => {
                let mut out = Vec::with_capacity(a.len());
                for (i, item) in a.iter().enumerate() {
                    let val = match item {
                        Value::Float(f) => *f,
                        Value::Integer(n) => *n as f64,
                        _ => {
                            self.errors
                                .push(format!("`params.{key}[{i}]` must be a number"));
                            continue;
                        }
                    };
                    let lo_ok = if lo_exclusive { val > lo } else { val >= lo };
                    if !lo_ok || val > hi {
                        let bracket = if lo_exclusive { "(" } else { "[" };
                        self.errors.push(format!(
                            "`params.{key}[{i}]` = {val} out of range {bracket}{lo}, {hi}]"
                        ));
                        continue;
                    }
                    out.push(val);
                }
                out
            }
            Some(_) => {
                self.errors.push(format!(
                    "`params.{key}` must be a nonempty array of numbers"
                ));
                default.to_vec()
            }
        }
    }

    fn slope(&mut self, params: &toml::Table, key: &str, default: SlopeMode) -> SlopeMode {
        match params.get(key) {
            None => default,
            Some(Value::String(s)) => match s.as_str() {
                "van-leer" => SlopeMode::VanLeer,
                "central" => SlopeMode::Central,
                other => {
                    self.errors.push(format!(
                        "`params.{key}` = \"{other}\" must be \"van-leer\" or \"central\""
                    ));
                    default
                }
            },
            Some(_) => {
                self.errors.push(format!("`params.{key}` must be a string"));
                default
            }
        }
    }
}

fn parse_runaway(params: &toml::Table, v: &mut Validator) -> RunawayParams {
    v.check_unknown(
        params,
        &[
            "tau",
            "g0",
            "lambda_end_over_tau",
            "step_over_tau",
            "q_over_m",
        ],
    );
    let d = RunawayParams::default();
    RunawayParams {
        tau: v.f64_in(params, "tau", d.tau, 0.0, 1e3, true),
        g0: v.f64_in(params, "g0", d.g0, 0.0, 1e6, true),
        lambda_end_over_tau: v.f64_in(
            params,
            "lambda_end_over_tau",
            d.lambda_end_over_tau,
            0.0,
            50.0,
            true,
        ),
        step_over_tau: v.f64_in(params, "step_over_tau", d.step_over_tau, 0.0, 1.0, true),
        q_over_m: v.f64_in(params, "q_over_m", d.q_over_m, -1e6, 1e6, false),
    }
}

fn parse_pusher_compare(params: &toml::Table, v: &mut Validator) -> PusherCompareParams {
    v.check_unknown(
        params,
        &[
            "tau",
            "e0",
            "v0_perp",
            "lambda_end",
            "step",
            "halvings",
            "q_over_m",
        ],
    );
    let d = PusherCompareParams::default();
    PusherCompareParams {
        tau: v.f64_in(params, "tau", d.tau, 0.0, 0.1, true),
        e0: v.f64_in(params, "e0", d.e0, 0.0, 1e3, true),
        v0_perp: v.f64_in(params, "v0_perp", d.v0_perp, 0.0, 10.0, false),
        lambda_end: v.f64_in(params, "lambda_end", d.lambda_end, 0.0, 1e3, true),
        step: v.f64_in(params, "step", d.step, 0.0, 1.0, true),
        halvings: v.usize_in(params, "halvings", d.halvings, 1, 8),
        q_over_m: v.f64_in(params, "q_over_m", d.q_over_m, -1e6, 1e6, false),
    }
}

fn parse_cold_oscillation(params: &toml::Table, v: &mut Validator) -> ColdOscillationParams {
    v.check_unknown(
        params,
        &[
            "omega_p_tau",
            "grid",
            "v_max",
            "amplitude",
            "periods",
            "cfl",
            "closure_order",
            "slope",
            "k_mode",
            "snapshot_final",
        ],
    );
    let d = ColdOscillationParams::default();
    ColdOscillationParams {
        omega_p_tau: v.f64_in(params, "omega_p_tau", d.omega_p_tau, 0.0, 0.1, false),
        grid: v.grid2(params, "grid", d.grid),
        v_max: v.f64_in(params, "v_max", d.v_max, 0.0, 10.0, true),
        amplitude: v.f64_in(params, "amplitude", d.amplitude, 0.0, 0.5, true),
        periods: v.f64_in(params, "periods", d.periods, 0.0, 1e4, true),
        cfl: v.f64_in(params, "cfl", d.cfl, 0.0, 1.0, true),
        closure_order: v.usize_in(params, "closure_order", d.closure_order as usize, 0, 2) as u32,
        slope: v.slope(params, "slope", d.slope),
        k_mode: v.usize_in(params, "k_mode", d.k_mode, 1, 64),
        snapshot_final: v.bool_or(params, "snapshot_final", d.snapshot_final),
    }
}

fn parse_dispersion_scan(params: &toml::Table, v: &mut Validator) -> DispersionScanParams {
    v.check_unknown(
        params,
        &["k_list", "tau_list", "n0", "vth", "q_over_m", "mass"],
    );
    let d = DispersionScanParams::default();
    DispersionScanParams {
        k_list: v.float_list(params, "k_list", &d.k_list, -1e3, 1e3, false),
        tau_list: v.float_list(params, "tau_list", &d.tau_list, 0.0, 0.1, true),
        n0: v.f64_in(params, "n0", d.n0, 0.0, 1e6, true),
        vth: v.f64_in(params, "vth", d.vth, 0.0, 1.0, false),
        q_over_m: v.f64_in(params, "q_over_m", d.q_over_m, -1e6, 1e6, false),
        mass: v.f64_in(params, "mass", d.mass, 0.0, 1e6, true),
    }
}

fn parse_entropy_budget(params: &toml::Table, v: &mut Validator) -> EntropyBudgetParams {
    v.check_unknown(
        params,
        &[
            "omega_p_tau",
            "grid",
            "v_max",
            "amplitude",
            "settle_periods",
            "cfl",
            "closure_order",
            "slope",
            "k_mode",
        ],
    );
    let d = EntropyBudgetParams::default();
    EntropyBudgetParams {
        omega_p_tau: v.f64_in(params, "omega_p_tau", d.omega_p_tau, 0.0, 0.1, false),
        grid: v.grid2(params, "grid", d.grid),
        v_max: v.f64_in(params, "v_max", d.v_max, 0.0, 10.0, true),
        amplitude: v.f64_in(params, "amplitude", d.amplitude, 0.0, 0.5, true),
        settle_periods: v.f64_in(params, "settle_periods", d.settle_periods, 0.0, 1e3, true),
        cfl: v.f64_in(params, "cfl", d.cfl, 0.0, 1.0, true),
        closure_order: v.usize_in(params, "closure_order", d.closure_order as usize, 0, 2) as u32,
        slope: v.slope(params, "slope", d.slope),
        k_mode: v.usize_in(params, "k_mode", d.k_mode, 1, 64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_cold_oscillation_gets_documented_defaults() {
        let s = Scenario::from_toml_str("scenario = \"cold-oscillation\"").unwrap();
        match s {
            Scenario::ColdOscillation(p) => {
                assert_eq!(p.grid, [256, 256]);
                assert_eq!(p.omega_p_tau, 1e-3);
                assert_eq!(p.closure_order, 1);
            }
            other => panic!("wrong scenario {other:?}"),
        }
    }

    #[test]
    fn out_of_range_omega_p_tau_names_key_and_interval() {
        let text = "scenario = \"cold-oscillation\"\n[params]\nomega_p_tau = 0.5\n";
        let errs = Scenario::from_toml_str(text).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].contains("omega_p_tau"), "{errs:?}");
        assert!(errs[0].contains("0.1"), "{errs:?}");
    }

    #[test]
    fn all_errors_reported_together() {
        let text =
            "scenario = \"cold-oscillation\"\n[params]\nomega_p_tau = 0.5\ncfl = 2.0\nbogus = 1\n";
        let errs = Scenario::from_toml_str(text).unwrap_err();
        assert_eq!(errs.len(), 3, "{errs:?}");
    }

    #[test]
    fn unknown_scenario_is_an_error() {
        let errs = Scenario::from_toml_str("scenario = \"frobnicate\"").unwrap_err();
        assert!(errs[0].contains("unknown scenario"));
    }

    #[test]
    fn dispersion_scan_with_three_taus() {
        let text = "scenario = \"dispersion-scan\"\n[params]\ntau_list = [1e-4, 1e-3, 1e-2]\n";
        match Scenario::from_toml_str(text).unwrap() {
            Scenario::DispersionScan(p) => assert_eq!(p.tau_list.len(), 3),
            other => panic!("wrong scenario {other:?}"),
        }
    }

    #[test]
    fn roundtrip_through_canonical_toml() {
        let scenarios = vec![
            Scenario::Runaway(RunawayParams::default()),
            Scenario::PusherCompare(PusherCompareParams {
                tau: 5e-3,
                ..Default::default()
            }),
            Scenario::ColdOscillation(ColdOscillationParams {
                slope: SlopeMode::VanLeer,
                snapshot_final: true,
                ..Default::default()
            }),
            Scenario::DispersionScan(DispersionScanParams {
                vth: 1e-3,
                ..Default::default()
            }),
            Scenario::EntropyBudget(EntropyBudgetParams::default()),
        ];
        for s in scenarios {
            let text = s.to_toml_string();
            let back = Scenario::from_toml_str(&text).unwrap();
            assert_eq!(s, back, "roundtrip failed for:\n{text}");
        }
    }

    #[test]
    fn overrides_apply_with_dotted_paths() {
        let s = Scenario::from_toml_with_overrides(
            "scenario = \"cold-oscillation\"",
            &[
                "params.amplitude=2e-4".to_string(),
                "params.slope=van-leer".to_string(),
            ],
        )
        .unwrap();
        match s {
            Scenario::ColdOscillation(p) => {
                assert_eq!(p.amplitude, 2e-4);
                assert_eq!(p.slope, SlopeMode::VanLeer);
            }
            other => panic!("wrong scenario {other:?}"),
        }
    }

    #[test]
    fn zero_tau_is_accepted_for_solver_scenarios() {
        let s = Scenario::from_toml_with_overrides(
            "scenario = \"cold-oscillation\"",
            &["params.omega_p_tau=0.0".to_string()],
        );
        assert!(s.is_ok());
    }
}
