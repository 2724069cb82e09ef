//! Text, CSV and JSON rendering of command results.
//!
//! Every number goes through [`number`], so CSV and JSON carry the same
//! decimal strings.

use std::io::{self, Write};

use clap::ValueEnum;
use lamb_core::kernel::{kernel_q, kernel_q_hypergeometric, Contour};
use lamb_core::oracle::kernel_via_spectral_series;
use lamb_core::shift::{DipoleLamb, PartialRate};
use lamb_core::tables::{format_j2, round_significant, TableReport, OUTPUT_DIGITS};
use lamb_core::{
    circular_rate_closed_form, decay_rates, BetheResult, DipoleOptions, PhysicalConstants,
    QuantumState, ShiftResult,
};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub enum Status {
    Ok,
    NotConverged,
    Failed,
}

pub struct Check {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

pub enum Report {
    Shift(ShiftResult),
    Rates {
        state: QuantumState,
        dipole: bool,
        rates: Vec<PartialRate>,
        total: f64,
    },
    Bethe {
        state: QuantumState,
        bethe: BetheResult,
        full: Option<DipoleLamb>,
    },
    Table(TableReport),
    Verify(Vec<Check>),
}

/// One CSV line.
struct Record {
    table_id: Option<u8>,
    n: u32,
    l: u32,
    j2: Option<u32>,
    final_n: Option<u32>,
    quantity: String,
    unit: &'static str,
    computed: f64,
    reference: Option<f64>,
    rel_dev: Option<f64>,
}

const CSV_HEADER: [&str; 10] = [
    "table_id",
    "N",
    "L",
    "J",
    "n",
    "quantity",
    "unit",
    "computed",
    "reference",
    "rel_dev",
];

/// Decimal rendering shared by all formats.
pub fn number(x: f64) -> String {
    Value::from(round_significant(x, OUTPUT_DIGITS)).to_string()
}

/// Rounds every float in `v` to the output precision.
fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => Value::from(round_significant(
            n.as_f64().unwrap_or(f64::NAN),
            OUTPUT_DIGITS,
        )),
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn mode(dipole: bool) -> &'static str {
    if dipole {
        "dipole"
    } else {
        "non-dipole"
    }
}

fn state_line(s: &QuantumState) -> String {
    let mut line = format!("N={} L={}", s.n, s.l);
    if let Some(j2) = s.j2 {
        line.push_str(&format!(" J={}", format_j2(j2)));
    }
    line.push_str(&format!(" Z={}", s.z));
    line
}

impl Report {
    pub fn status(&self) -> Status {
        let converged = match self {
            Report::Shift(r) => r.diagnostics.converged,
            Report::Rates { .. } => true,
            Report::Bethe { bethe, .. } => bethe.converged,
            Report::Table(t) => t.converged,
            Report::Verify(checks) => {
                return if checks.iter().all(Check::passed) {
                    Status::Ok
                } else {
                    Status::Failed
                }
            }
        };
        if converged {
            Status::Ok
        } else {
            Status::NotConverged
        }
    }

    fn records(&self) -> Vec<Record> {
        let base = |s: &QuantumState, quantity: &str, unit, computed| Record {
            table_id: None,
            n: s.n,
            l: s.l,
            j2: s.j2,
            final_n: None,
            quantity: quantity.to_string(),
            unit,
            computed,
            reference: None,
            rel_dev: None,
        };
        let rate_records = |s: &QuantumState, rates: &[PartialRate], total| {
            let mut out: Vec<Record> = rates
                .iter()
                .map(|r| Record {
                    final_n: Some(r.n),
                    ..base(s, "rate", "1e6/s", r.rate)
                })
                .collect();
            out.push(base(s, "total_rate", "1e6/s", total));
            out
        };
        match self {
            Report::Shift(r) => {
                let mut out = vec![base(&r.state, "lamb_shift", "MHz", r.lamb_shift_mhz)];
                out.extend(rate_records(&r.state, &r.partial_rates, r.total_rate));
                out.push(base(
                    &r.state,
                    "lamb_shift_error",
                    "MHz",
                    r.diagnostics.error_estimate_mhz,
                ));
                out
            }
            Report::Rates {
                state,
                rates,
                total,
                ..
            } => rate_records(state, rates, *total),
            Report::Bethe { state, bethe, full } => {
                let mut out = vec![
                    base(state, "bethe_log", "1", bethe.gamma_nl),
                    base(state, "mean_excitation", "Ry", bethe.mean_excitation_ry),
                ];
                if let Some(d) = full {
                    out.push(base(state, "lamb_shift", "MHz", d.with_relativistic_mhz));
                    out.push(base(
                        state,
                        "lamb_shift_no_rel",
                        "MHz",
                        d.without_relativistic_mhz,
                    ));
                }
                out
            }
            Report::Table(t) => t
                .rows
                .iter()
                .map(|r| Record {
                    table_id: Some(r.table_id),
                    n: r.n,
                    l: r.l,
                    j2: r.j2,
                    final_n: r.final_n,
                    quantity: r.quantity.to_string(),
                    unit: r.unit,
                    computed: r.computed,
                    reference: Some(r.reference),
                    rel_dev: r.rel_dev,
                })
                .collect(),
            Report::Verify(_) => Vec::new(),
        }
    }

    fn json(&self) -> serde_json::Result<Value> {
        let v = match self {
            Report::Shift(r) => serde_json::to_value(r)?,
            Report::Rates { rates, total, .. } => {
                json!({ "partial_rates": rates, "total_rate": total })
            }
            Report::Bethe { bethe, full, .. } => {
                let mut v = serde_json::to_value(bethe)?;
                if let (Some(d), Some(obj)) = (full, v.as_object_mut()) {
                    obj.insert("lamb_shift_mhz".into(), d.with_relativistic_mhz.into());
                    obj.insert(
                        "lamb_shift_no_rel_mhz".into(),
                        d.without_relativistic_mhz.into(),
                    );
                }
                v
            }
            Report::Table(t) => serde_json::to_value(t)?,
            Report::Verify(checks) => Value::Array(
                checks
                    .iter()
                    .map(|c| {
                        json!({
                            "name": c.name,
                            "deviation": c.deviation,
                            "tolerance": c.tolerance,
                            "passed": c.passed(),
                        })
                    })
                    .collect(),
            ),
        };
        Ok(round_json(v))
    }

    fn text(&self, out: &mut dyn Write) -> io::Result<()> {
        match self {
            Report::Shift(r) => {
                writeln!(out, "{} ({})", state_line(&r.state), mode(r.dipole))?;
                writeln!(out, "lamb_shift    {} MHz", number(r.lamb_shift_mhz))?;
                for p in &r.partial_rates {
                    writeln!(out, "rate n={:<6} {} 1e6/s", p.n, number(p.rate))?;
                }
                writeln!(out, "total_rate    {} 1e6/s", number(r.total_rate))?;
                writeln!(
                    out,
                    "error         {} MHz",
                    number(r.diagnostics.error_estimate_mhz)
                )?;
                writeln!(out, "converged     {}", r.diagnostics.converged)
            }
            Report::Rates {
                state,
                dipole,
                rates,
                total,
            } => {
                writeln!(out, "{} ({})", state_line(state), mode(*dipole))?;
                for p in rates {
                    writeln!(out, "rate n={:<6} {} 1e6/s", p.n, number(p.rate))?;
                }
                writeln!(out, "total_rate    {} 1e6/s", number(*total))
            }
            Report::Bethe { state, bethe, full } => {
                writeln!(out, "{} (dipole)", state_line(state))?;
                writeln!(out, "bethe_log         {}", number(bethe.gamma_nl))?;
                writeln!(
                    out,
                    "mean_excitation   {} Ry",
                    number(bethe.mean_excitation_ry)
                )?;
                if let Some(d) = full {
                    writeln!(
                        out,
                        "lamb_shift        {} MHz",
                        number(d.with_relativistic_mhz)
                    )?;
                    writeln!(
                        out,
                        "lamb_shift_no_rel {} MHz",
                        number(d.without_relativistic_mhz)
                    )?;
                }
                writeln!(
                    out,
                    "residual          {}",
                    number(bethe.extrapolation_residual)
                )?;
                writeln!(out, "converged         {}", bethe.converged)
            }
            Report::Table(t) => {
                writeln!(
                    out,
                    "{:<24} {:<18} {:>20} {:>12} {:>10}",
                    "row", "quantity", "computed", "reference", "rel_dev"
                )?;
                for (key, rows) in t.grouped() {
                    for (i, r) in rows.iter().enumerate() {
                        let label = if i == 0 { key } else { "" };
                        let dev = r.rel_dev.map(|d| format!("{d:.2e}")).unwrap_or_default();
                        writeln!(
                            out,
                            "{:<24} {:<18} {:>20} {:>12} {:>10}",
                            label,
                            r.quantity.as_str(),
                            number(r.computed),
                            number(r.reference),
                            dev
                        )?;
                    }
                }
                writeln!(out, "max |rel_dev| {:.2e}", t.max_abs_rel_dev())?;
                writeln!(out, "converged     {}", t.converged)
            }
            Report::Verify(checks) => {
                for c in checks {
                    let verdict = if c.passed() { "PASS" } else { "FAIL" };
                    writeln!(
                        out,
                        "{verdict} {:<40} {:.2e} (tol {:.0e})",
                        c.name, c.deviation, c.tolerance
                    )?;
                }
                Ok(())
            }
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Text => self.text(out),
            Format::Json => {
                let v = self.json().map_err(io::Error::other)?;
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&v).map_err(io::Error::other)?
                )
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(CSV_HEADER)?;
                for r in self.records() {
                    w.write_record([
                        opt(r.table_id),
                        r.n.to_string(),
                        r.l.to_string(),
                        r.j2.map(format_j2).unwrap_or_default(),
                        opt(r.final_n),
                        r.quantity,
                        r.unit.to_string(),
                        number(r.computed),
                        r.reference.map(number).unwrap_or_default(),
                        r.rel_dev.map(number).unwrap_or_default(),
                    ])?;
                }
                w.flush()
            }
        }
    }
}

/// Cross-checks of closed forms against the general code paths.
pub fn verify(c: &PhysicalConstants) -> lamb_core::Result<Vec<Check>> {
    let mut checks = Vec::new();
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();

    let two_p = QuantumState::new(2, 1, 1)?;
    let rate = decay_rates(&two_p, &DipoleOptions::dipole_rates(), c)?[0].rate;
    let exact = (2.0f64 / 3.0).powi(8) * c.rate_unit(1) / 1e6;
    checks.push(Check {
        name: "2p dipole rate vs (2/3)^8".into(),
        deviation: rel(rate, exact),
        tolerance: 1e-12,
    });

    for n in 2..=10 {
        let state = QuantumState::new(n, n - 1, 1)?;
        let rates = decay_rates(&state, &DipoleOptions::dipole_rates(), c)?;
        let top = rates.last().map(|r| r.rate).unwrap_or(0.0);
        let closed = circular_rate_closed_form(n, 1, c)?;
        checks.push(Check {
            name: format!("circular rate N={n}"),
            deviation: rel(top, closed),
            tolerance: 1e-12,
        });
    }

    for (n, l, t, phi) in [(3, 1, 0.7, 0.4), (4, 0, 2.1, 1.3), (5, 2, 4.0, 0.2)] {
        let q = kernel_q(n, l, t, phi)?;
        let series = kernel_via_spectral_series(n, l, Contour::RealTime(t), phi, 400)?.value;
        checks.push(Check {
            name: format!("kernel vs spectral series ({n},{l})"),
            deviation: (q - series).norm() / q.norm(),
            tolerance: 1e-10,
        });
        let h = kernel_q_hypergeometric(n, l, t, phi)?;
        checks.push(Check {
            name: format!("kernel Jacobi vs 2F1 ({n},{l})"),
            deviation: (q - h).norm() / q.norm(),
            tolerance: 1e-12,
        });
    }
    Ok(checks)
}
