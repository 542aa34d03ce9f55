//! Parallel grid evaluation over `(Δ/g, A/g)` with CSV or JSON-lines output.
//!
//! Energies are in units of `g` and `ω_c` is fixed through `g/ω_a`. Points
//! are statically partitioned over worker threads and reassembled in
//! row-major order (`Δ` outer), so output is byte-identical for any worker
//! count.

use crate::analysis::{classify, solve_dimer, Mobility, Particle, Thresholds};
use crate::eigen::SolverConfig;
use crate::error::{Error, Result};
use crate::hamiltonian::ModelParams;
use crate::hilbert::Sector;
use crate::observables::variances;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps }
    }

    /// `steps` evenly spaced values from `min` to `max` inclusive; a single
    /// step yields `min`.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + h * i as f64
                }
            })
            .collect()
    }

    pub fn step(&self) -> f64 {
        if self.steps <= 1 {
            0.0
        } else {
            (self.max - self.min) / (self.steps - 1) as f64
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidSweep(format!("{name}: steps must be >= 1")));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return Err(Error::InvalidSweep(format!(
                "{name}: need finite min <= max, got [{}, {}]",
                self.min, self.max
            )));
        }
        Ok(())
    }
}

/// Output columns, declared in their fixed CSV order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Observable {
    Energy,
    Dn1,
    Dna1,
    Product,
    PhotonVar,
    MeanNa1,
    Label,
}

impl Observable {
    pub const ALL: [Observable; 7] = [
        Observable::Energy,
        Observable::Dn1,
        Observable::Dna1,
        Observable::Product,
        Observable::PhotonVar,
        Observable::MeanNa1,
        Observable::Label,
    ];

    fn columns(self) -> &'static [&'static str] {
        match self {
            Observable::Energy => &["energy_over_g"],
            Observable::Dn1 => &["dn1"],
            Observable::Dna1 => &["dna1"],
            Observable::Product => &["product"],
            Observable::PhotonVar => &["photon_var"],
            Observable::MeanNa1 => &["mean_na1"],
            Observable::Label => &["label_mobility", "label_particle"],
        }
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "energy" => Observable::Energy,
            "dn1" => Observable::Dn1,
            "dna1" => Observable::Dna1,
            "product" => Observable::Product,
            "photon_var" => Observable::PhotonVar,
            "mean_na1" => Observable::MeanNa1,
            "label" => Observable::Label,
            other => return Err(Error::InvalidSweep(format!("unknown observable '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" | "jsonl" => Ok(Format::JsonLines),
            other => Err(Error::InvalidSweep(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub delta_over_g: Axis,
    pub hop_over_g: Axis,
    pub g_over_omega_a: f64,
    pub observables: Vec<Observable>,
    pub format: Format,
    pub workers: usize,
    /// Report `E/g` instead of `(E − 2ω_c)/g`.
    pub absolute_energy: bool,
    pub solver: SolverConfig<f64>,
    pub thresholds: Thresholds<f64>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            delta_over_g: Axis::new(-20.0, 20.0, 101),
            hop_over_g: Axis::new(0.0, 20.0, 101),
            g_over_omega_a: 1e-4,
            observables: Observable::ALL.to_vec(),
            format: Format::Csv,
            workers: 1,
            absolute_energy: false,
            solver: SolverConfig::default(),
            thresholds: Thresholds::default(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.delta_over_g.validate("delta_over_g")?;
        self.hop_over_g.validate("hop_over_g")?;
        if self.hop_over_g.min < 0.0 {
            return Err(Error::InvalidSweep("hopping must be >= 0".into()));
        }
        if !(self.g_over_omega_a > 0.0 && self.g_over_omega_a.is_finite()) {
            return Err(Error::InvalidSweep("g/omega_a must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidSweep("workers must be >= 1".into()));
        }
        Ok(())
    }

    fn sorted_observables(&self) -> Vec<Observable> {
        let mut obs = self.observables.clone();
        obs.sort();
        obs.dedup();
        obs
    }

    pub fn header(&self) -> Vec<&'static str> {
        let mut cols = vec!["delta_over_g", "a_over_g"];
        for o in self.sorted_observables() {
            cols.extend_from_slice(o.columns());
        }
        cols.push("degenerate");
        cols
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointValues {
    pub energy_over_g: f64,
    pub dn1: f64,
    pub dna1: f64,
    pub product: f64,
    pub photon_var: f64,
    pub mean_na1: f64,
    /// `None` for a degenerate ground level.
    pub label: Option<(Mobility, Particle)>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub delta_over_g: f64,
    pub a_over_g: f64,
    /// Per-point failures are recorded here instead of aborting the sweep.
    pub outcome: std::result::Result<PointValues, String>,
}

fn evaluate(sector: &Sector, spec: &SweepSpec, delta: f64, hop: f64) -> Result<PointValues> {
    let params = ModelParams::with_coupling_ratio(spec.g_over_omega_a, delta, 1.0, hop);
    let gs = solve_dimer(sector, &params, &spec.solver)?;
    let v = variances(&gs.vector, sector)?.with_degenerate(gs.degenerate);
    let label = match classify(&v, spec.thresholds) {
        Ok(l) => Some((l.mobility, l.particle)),
        Err(Error::DegenerateGround) => None,
        Err(e) => return Err(e),
    };
    let energy = if spec.absolute_energy {
        gs.energy
    } else {
        gs.energy - 2.0 * params.omega_c
    };
    Ok(PointValues {
        energy_over_g: energy / params.g,
        dn1: v.var_n1,
        dna1: v.var_na1,
        product: v.product,
        photon_var: v.var_photon1,
        mean_na1: v.mean_na1,
        label,
        degenerate: gs.degenerate,
    })
}

/// Evaluates every grid point. Rows come back in row-major order with
/// `Δ/g` as the outer index.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let deltas = spec.delta_over_g.values();
    let hops = spec.hop_over_g.values();
    let points: Vec<(f64, f64)> = deltas
        .iter()
        .flat_map(|&d| hops.iter().map(move |&a| (d, a)))
        .collect();
    let sector = Sector::dimer();
    let workers = spec.workers.min(points.len()).max(1);
    let chunk = points.len().div_ceil(workers);

    let compute = |slice: &[(f64, f64)]| -> Vec<SweepRow> {
        slice
            .iter()
            .map(|&(d, a)| SweepRow {
                delta_over_g: d,
                a_over_g: a,
                outcome: evaluate(&sector, spec, d, a).map_err(|e| e.to_string()),
            })
            .collect()
    };

    if workers == 1 {
        return Ok(compute(&points));
    }
    let rows = std::thread::scope(|s| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .map(|slice| s.spawn(move || compute(slice)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    Ok(rows)
}

/// Formats with 12 significant digits, using plain notation for moderate
/// exponents and trimming trailing zeros.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn row_cells(row: &SweepRow, observables: &[Observable]) -> Vec<String> {
    let mut cells = vec![format_sig(row.delta_over_g), format_sig(row.a_over_g)];
    match &row.outcome {
        Ok(v) => {
            for o in observables {
                match o {
                    Observable::Energy => cells.push(format_sig(v.energy_over_g)),
                    Observable::Dn1 => cells.push(format_sig(v.dn1)),
                    Observable::Dna1 => cells.push(format_sig(v.dna1)),
                    Observable::Product => cells.push(format_sig(v.product)),
                    Observable::PhotonVar => cells.push(format_sig(v.photon_var)),
                    Observable::MeanNa1 => cells.push(format_sig(v.mean_na1)),
                    Observable::Label => match v.label {
                        Some((m, p)) => {
                            cells.push(m.as_str().into());
                            cells.push(p.as_str().into());
                        }
                        None => {
                            cells.push("degenerate".into());
                            cells.push("degenerate".into());
                        }
                    },
                }
            }
            cells.push(v.degenerate.to_string());
        }
        Err(msg) => {
            for o in observables {
                for _ in o.columns() {
                    cells.push("error".into());
                }
            }
            cells.push(format!("error: {msg}"));
        }
    }
    cells
}

pub fn write_rows<W: Write>(rows: &[SweepRow], spec: &SweepSpec, out: W) -> Result<()> {
    let observables = spec.sorted_observables();
    let header = spec.header();
    match spec.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header).map_err(csv_err)?;
            for row in rows {
                w.write_record(row_cells(row, &observables))
                    .map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::JsonLines => {
            let mut out = out;
            for row in rows {
                let mut obj = serde_json::Map::new();
                for (key, cell) in header.iter().zip(row_cells(row, &observables)) {
                    obj.insert((*key).to_string(), json_cell(&cell));
                }
                serde_json::to_writer(&mut out, &serde_json::Value::Object(obj))?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

fn json_cell(cell: &str) -> serde_json::Value {
    match cell {
        "true" => serde_json::Value::Bool(true),
        "false" => serde_json::Value::Bool(false),
        _ => match cell.parse::<f64>() {
            Ok(x) if x.is_finite() => serde_json::json!(x),
            _ => serde_json::Value::String(cell.to_string()),
        },
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Runs the sweep and writes it to `path`. Returns the number of rows.
pub fn run_sweep_to_path(spec: &SweepSpec, path: &Path) -> Result<usize> {
    let rows = run_sweep(spec)?;
    let file = std::fs::File::create(path)?;
    write_rows(&rows, spec, std::io::BufWriter::new(file))?;
    Ok(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_values() {
        assert_eq!(Axis::new(0.0, 1.0, 1).values(), vec![0.0]);
        assert_eq!(Axis::new(-1.0, 1.0, 3).values(), vec![-1.0, 0.0, 1.0]);
        let v = Axis::new(-20.0, 20.0, 101).values();
        assert_eq!(v.len(), 101);
        assert_eq!(v[100], 20.0);
        assert!((v[25] + 10.0).abs() < 1e-12);
    }

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(-20.0), "-20");
        assert_eq!(format_sig(123456.7890123456), "123456.789012");
        assert_eq!(format_sig(1.5e-9), "1.5e-9");
        assert_eq!(format_sig(2.5e14), "2.5e14");
        assert_eq!(format_sig(f64::NAN), "nan");
    }

    #[test]
    fn invalid_specs() {
        let mut s = SweepSpec::default();
        s.delta_over_g.steps = 0;
        assert!(s.validate().is_err());
        let s = SweepSpec {
            hop_over_g: Axis::new(-1.0, 1.0, 3),
            ..SweepSpec::default()
        };
        assert!(s.validate().is_err());
        let s = SweepSpec {
            delta_over_g: Axis::new(1.0, -1.0, 3),
            ..SweepSpec::default()
        };
        assert!(s.validate().is_err());
        let s = SweepSpec {
            workers: 0,
            ..SweepSpec::default()
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn header_follows_fixed_order() {
        let spec = SweepSpec {
            observables: vec![Observable::Label, Observable::Dn1, Observable::Energy],
            ..SweepSpec::default()
        };
        assert_eq!(
            spec.header(),
            vec![
                "delta_over_g",
                "a_over_g",
                "energy_over_g",
                "dn1",
                "label_mobility",
                "label_particle",
                "degenerate"
            ]
        );
        assert_eq!(SweepSpec::default().header().len(), 11);
    }

    #[test]
    fn parse_observables_and_format() {
        assert_eq!("dna1".parse::<Observable>().unwrap(), Observable::Dna1);
        assert!("bogus".parse::<Observable>().is_err());
        assert_eq!("jsonl".parse::<Format>().unwrap(), Format::JsonLines);
    }

    #[test]
    fn error_rows_are_marked() {
        let spec = SweepSpec::default();
        let row = SweepRow {
            delta_over_g: 1.0,
            a_over_g: 2.0,
            outcome: Err("solver did not converge".into()),
        };
        let mut buf = Vec::new();
        write_rows(&[row], &spec, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let line = text.lines().nth(1).unwrap();
        assert!(line.starts_with("1,2,error,"));
        assert!(line.ends_with("error: solver did not converge"));
    }

    #[test]
    fn small_grid_runs() {
        let spec = SweepSpec {
            delta_over_g: Axis::new(-2.0, 2.0, 3),
            hop_over_g: Axis::new(0.0, 1.0, 2),
            ..SweepSpec::default()
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!((rows[1].delta_over_g, rows[1].a_over_g), (-2.0, 1.0));
        assert!(rows.iter().all(|r| r.outcome.is_ok()));
    }
}
