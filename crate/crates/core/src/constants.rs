//! Physical constants and unit conversions.
//!
//! Everything downstream works in dimensionless variables; energies in eV,
//! frequencies in MHz and rates in 10⁶ s⁻¹ only appear through the
//! converters defined here.

use std::f64::consts::PI;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// CODATA 2018 values, stored as a `key = value` text fixture.
pub const CODATA_2018: &str = include_str!("../fixtures/codata2018.txt");

/// Environment variable that may point to an alternative constants file.
pub const CONSTANTS_FILE_ENV: &str = "LAMBSHIFT_CONSTANTS_FILE";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Fine-structure constant.
    pub alpha0: f64,
    /// Electron rest energy in eV.
    pub mec2: f64,
    /// Reduced Planck constant in eV·s.
    pub hbar: f64,
}

/// The pinned CODATA 2018 set.
pub fn default_constants() -> PhysicalConstants {
    PhysicalConstants::parse(CODATA_2018).expect("embedded constants fixture is valid")
}

/// Nonrelativistic hydrogenic energy `E_N = -m c² (Zα)² / (2N²)` in eV.
pub fn rydberg_energy(c: &PhysicalConstants, z: u32, n: u32) -> Result<f64> {
    if z == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "rydberg_energy needs Z >= 1 and N >= 1 (got Z={z}, N={n})"
        )));
    }
    Ok(-0.5 * c.atomic_energy(z) / f64::from(n).powi(2))
}

impl PhysicalConstants {
    /// Parses a `key = value` text. Blank lines and `#` comments are skipped;
    /// all three keys are required.
    pub fn parse(text: &str) -> Result<Self> {
        let (mut alpha0, mut mec2, mut hbar) = (None, None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Constants(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::Constants(format!(
                    "line {}: `{}` is not a number",
                    lineno + 1,
                    value.trim()
                ))
            })?;
            match key.trim() {
                "alpha0" => alpha0 = Some(value),
                "mec2" => mec2 = Some(value),
                "hbar" => hbar = Some(value),
                other => {
                    return Err(Error::Constants(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        let missing = |k: &str| Error::Constants(format!("missing key `{k}`"));
        let c = Self {
            alpha0: alpha0.ok_or_else(|| missing("alpha0"))?,
            mec2: mec2.ok_or_else(|| missing("mec2"))?,
            hbar: hbar.ok_or_else(|| missing("hbar"))?,
        };
        for (name, v) in [("alpha0", c.alpha0), ("mec2", c.mec2), ("hbar", c.hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Constants(format!(
                    "`{name}` must be positive and finite"
                )));
            }
        }
        Ok(c)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Constants(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Renders the set back into the fixture format.
    pub fn to_key_value(&self) -> String {
        format!(
            "alpha0 = {:e}\nmec2 = {:e}\nhbar = {:e}\n",
            self.alpha0, self.mec2, self.hbar
        )
    }

    /// Whether the values sit in the window of the measured constants.
    pub fn is_physical(&self) -> bool {
        (7.29e-3..7.30e-3).contains(&self.alpha0)
            && (5.109e5..5.110e5).contains(&self.mec2)
            && (6.58e-16..6.59e-16).contains(&self.hbar)
    }

    /// `Zα`.
    pub fn z_alpha(&self, z: u32) -> f64 {
        f64::from(z) * self.alpha0
    }

    /// Atomic energy unit `E₀ = m c² (Zα)²` in eV.
    pub fn atomic_energy(&self, z: u32) -> f64 {
        self.mec2 * self.z_alpha(z).powi(2)
    }

    /// Rate unit `m c² α (Zα)⁴ / ħ` in s⁻¹.
    pub fn rate_unit(&self, z: u32) -> f64 {
        self.mec2 * self.alpha0 * self.z_alpha(z).powi(4) / self.hbar
    }

    /// Planck constant `h = 2πħ` in eV·s.
    pub fn planck(&self) -> f64 {
        2.0 * PI * self.hbar
    }

    /// Energy (eV) to frequency `E/h` in MHz.
    pub fn ev_to_mhz(&self, energy_ev: f64) -> f64 {
        energy_ev / self.planck() / 1e6
    }

    /// Frequency in MHz to energy in eV.
    pub fn mhz_to_ev(&self, mhz: f64) -> f64 {
        mhz * 1e6 * self.planck()
    }

    /// Rate in s⁻¹ expressed in the table unit 10⁶ s⁻¹.
    pub fn per_second_to_table_rate(rate: f64) -> f64 {
        rate / 1e6
    }
}
