//! Drive-cycle ingestion and road-load demand power.
//!
//! A cycle is a 1 Hz (configurable `dt`) speed trace; demand power follows the
//! longitudinal road-load law on flat grade. NEDC, WLTC, and a short synthetic
//! urban cycle ship as bundled CSV assets.

use crate::error::{Error, Result};
use std::path::Path;

const NEDC_CSV: &str = include_str!("../assets/cycles/nedc.csv");
const WLTC_CSV: &str = include_str!("../assets/cycles/wltc.csv");
const URBAN300_CSV: &str = include_str!("../assets/cycles/urban300.csv");

/// Uniformly sampled speed trace. Sample `i` is at `t = i * dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveCycle {
    pub name: String,
    pub dt: f64,
    speeds: Vec<f64>,
}

/// Road-load parameters of the vehicle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleParams {
    pub mass_kg: f64,
    pub rolling_resist: f64,
    pub drag_coeff: f64,
    pub frontal_area_m2: f64,
    pub air_density: f64,
    pub gravity: f64,
}

impl Default for VehicleParams {
    fn default() -> Self {
        Self {
            mass_kg: 1830.0,
            rolling_resist: 0.013,
            drag_coeff: 0.325,
            frontal_area_m2: 2.3,
            air_density: 1.2,
            gravity: 9.81,
        }
    }
}

impl VehicleParams {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.mass_kg,
            self.rolling_resist,
            self.drag_coeff,
            self.frontal_area_m2,
            self.air_density,
            self.gravity,
        ];
        if all.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::Validation(
                "vehicle parameters must be strictly positive".into(),
            ));
        }
        if self.rolling_resist >= 0.1 {
            return Err(Error::Validation(format!(
                "rolling resistance {} out of range (< 0.1)",
                self.rolling_resist
            )));
        }
        Ok(())
    }
}

/// Past-averaging and future-preview horizons used by the learning agent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorizonConfig {
    /// Past window for the average demand power [s].
    pub t_avg: f64,
    /// Future speed-preview window [s].
    pub t_fx: f64,
}

impl Default for HorizonConfig {
    fn default() -> Self {
        Self { t_avg: 30.0, t_fx: 10.0 }
    }
}

impl HorizonConfig {
    pub fn validate(&self, dt: f64) -> Result<()> {
        for (label, v) in [("t_avg", self.t_avg), ("t_fx", self.t_fx)] {
            if v <= 0.0 {
                return Err(Error::Validation(format!("{label} must be > 0")));
            }
            let steps = v / dt;
            if (steps - steps.round()).abs() > 1e-9 {
                return Err(Error::Validation(format!(
                    "{label} = {v} is not an integer multiple of dt = {dt}"
                )));
            }
        }
        Ok(())
    }
}

impl DriveCycle {
    /// Build a cycle from already-uniform samples, validating invariants.
    pub fn from_speeds(name: impl Into<String>, dt: f64, speeds: Vec<f64>) -> Result<Self> {
        if dt <= 0.0 {
            return Err(Error::Validation("dt must be > 0".into()));
        }
        if speeds.is_empty() {
            return Err(Error::Validation("cycle has no samples".into()));
        }
        if let Some(v) = speeds.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::Validation(format!("speed {v} is negative or non-finite")));
        }
        Ok(Self { name: name.into(), dt, speeds })
    }

    /// Resample (time, speed) pairs onto a uniform `dt` grid by linear
    /// interpolation. Times must start at 0 and be strictly increasing.
    pub fn resample(name: impl Into<String>, points: &[(f64, f64)], dt: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Validation("cycle file has no data rows".into()));
        }
        if points[0].0.abs() > 1e-9 {
            return Err(Error::Validation(format!(
                "first sample must be at t=0, found t={}",
                points[0].0
            )));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::Validation(format!(
                    "time not strictly increasing at t={}",
                    w[1].0
                )));
            }
        }
        let t_end = points[points.len() - 1].0;
        let n = (t_end / dt).floor() as usize;
        let mut speeds = Vec::with_capacity(n + 1);
        let mut j = 0usize;
        for i in 0..=n {
            let t = i as f64 * dt;
            while j + 1 < points.len() && points[j + 1].0 < t {
                j += 1;
            }
            let (t0, v0) = points[j];
            let (t1, v1) = points[(j + 1).min(points.len() - 1)];
            let v = if t1 <= t0 {
                v1
            } else {
                let a = ((t - t0) / (t1 - t0)).clamp(0.0, 1.0);
                v0 + a * (v1 - v0)
            };
            speeds.push(v.max(0.0));
        }
        Self::from_speeds(name, dt, speeds)
    }

    /// Load a cycle from a CSV file (`time_s,speed_mps`, `#` comments) and
    /// resample it to `dt`.
    pub fn load(path: impl AsRef<Path>, dt: f64) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "cycle".into());
        Self::parse_csv(&name, &text, dt)
    }

    /// Resolve a built-in name (`nedc`, `wltc`, `urban300`) or a file path.
    pub fn load_named(name: &str, dt: f64) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "nedc" => Self::parse_csv("nedc", NEDC_CSV, dt),
            "wltc" => Self::parse_csv("wltc", WLTC_CSV, dt),
            "urban300" => Self::parse_csv("urban300", URBAN300_CSV, dt),
            _ => Self::load(name, dt),
        }
    }

    fn parse_csv(name: &str, text: &str, dt: f64) -> Result<Self> {
        let mut points = Vec::new();
        let mut header_seen = false;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header_seen {
                if line != "time_s,speed_mps" {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected header 'time_s,speed_mps', found '{line}'"),
                    });
                }
                header_seen = true;
                continue;
            }
            let mut cols = line.split(',');
            let (t, v) = match (cols.next(), cols.next(), cols.next()) {
                (Some(t), Some(v), None) => (t, v),
                _ => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected exactly two columns".into(),
                    })
                }
            };
            let t: f64 = t.trim().parse().map_err(|e| Error::Parse {
                line: lineno,
                msg: format!("bad time '{t}': {e}"),
            })?;
            let v: f64 = v.trim().parse().map_err(|e| Error::Parse {
                line: lineno,
                msg: format!("bad speed '{v}': {e}"),
            })?;
            points.push((t, v));
        }
        Self::resample(name, &points, dt)
    }

    pub fn len(&self) -> usize {
        self.speeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.speeds.is_empty()
    }

    /// Last sample time [s].
    pub fn duration(&self) -> f64 {
        (self.speeds.len() - 1) as f64 * self.dt
    }

    pub fn speeds(&self) -> &[f64] {
        &self.speeds
    }

    pub fn speed(&self, index: usize) -> f64 {
        self.speeds[index]
    }

    pub fn max_speed(&self) -> f64 {
        self.speeds.iter().cloned().fold(0.0, f64::max)
    }

    /// Trapezoidal distance over the whole cycle [m].
    pub fn distance_m(&self) -> f64 {
        self.speeds
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]) * self.dt)
            .sum()
    }

    /// Remaining distance from sample `index` to the end [m].
    pub fn distance_remaining_m(&self, index: usize) -> f64 {
        if index + 1 >= self.speeds.len() {
            return 0.0;
        }
        self.speeds[index..]
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]) * self.dt)
            .sum()
    }

    fn index_of(&self, t: f64) -> Result<usize> {
        if t < -1e-9 || t > self.duration() + 1e-9 {
            return Err(Error::Domain(format!(
                "t = {t} outside cycle span [0, {}]",
                self.duration()
            )));
        }
        Ok(((t / self.dt).round() as usize).min(self.speeds.len() - 1))
    }

    /// Acceleration at sample `index` by central difference
    /// (forward/backward at the endpoints) [m/s²].
    pub fn acceleration(&self, index: usize) -> f64 {
        let n = self.speeds.len();
        if n == 1 {
            return 0.0;
        }
        if index == 0 {
            (self.speeds[1] - self.speeds[0]) / self.dt
        } else if index + 1 >= n {
            (self.speeds[n - 1] - self.speeds[n - 2]) / self.dt
        } else {
            (self.speeds[index + 1] - self.speeds[index - 1]) / (2.0 * self.dt)
        }
    }

    /// Road-load demand power at time `t` [W]. Negative values (braking)
    /// are preserved; regeneration limits are applied downstream.
    pub fn demand_power(&self, t: f64, p: &VehicleParams) -> Result<f64> {
        let i = self.index_of(t)?;
        Ok(self.demand_power_at(i, p))
    }

    /// Same as [`demand_power`](Self::demand_power), indexed by sample.
    pub fn demand_power_at(&self, index: usize, p: &VehicleParams) -> f64 {
        let v = self.speeds[index];
        let a = self.acceleration(index);
        road_load_power(v, a, p)
    }

    /// Speeds over `[t, t + t_fx]`; samples beyond the cycle end are padded
    /// with the final speed (stands in for a digital-map preview).
    pub fn future_speed_window(&self, t: f64, cfg: &HorizonConfig) -> Vec<f64> {
        let steps = (cfg.t_fx / self.dt).round() as usize;
        let start = (t / self.dt).round().max(0.0) as usize;
        let last = *self.speeds.last().expect("cycle is non-empty");
        (0..=steps)
            .map(|k| self.speeds.get(start + k).copied().unwrap_or(last))
            .collect()
    }
}

/// Longitudinal road-load law on flat grade:
/// `P = v (m a + m g f + 0.5 rho Cd A v^2)`.
pub fn road_load_power(v: f64, a: f64, p: &VehicleParams) -> f64 {
    let force = p.mass_kg * a
        + p.mass_kg * p.gravity * p.rolling_resist
        + 0.5 * p.air_density * p.drag_coeff * p.frontal_area_m2 * v * v;
    v * force
}

/// Arithmetic mean of the demand-power history over the trailing
/// `min(t_avg, available)` seconds.
pub fn average_demand_power(history: &[f64], cfg: &HorizonConfig, dt: f64) -> Result<f64> {
    if history.is_empty() {
        return Err(Error::Domain("empty power history".into()));
    }
    let window = ((cfg.t_avg / dt).round() as usize).max(1).min(history.len());
    let tail = &history[history.len() - window..];
    Ok(tail.iter().sum::<f64>() / window as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table1_params() -> VehicleParams {
        VehicleParams::default()
    }

    #[test]
    fn identity_resample() {
        let c = DriveCycle::resample("t", &[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)], 1.0).unwrap();
        assert_eq!(c.speeds(), &[0.0, 1.0, 2.0]);
    }

    #[test]
    fn midpoint_interpolation() {
        let c = DriveCycle::resample("t", &[(0.0, 0.0), (2.0, 2.0)], 1.0).unwrap();
        assert_eq!(c.speeds(), &[0.0, 1.0, 2.0]);
    }

    #[test]
    fn builtin_nedc_duration_and_peak() {
        let c = DriveCycle::load_named("nedc", 1.0).unwrap();
        assert_eq!(c.duration(), 1180.0);
        assert!((c.max_speed() * 3.6 - 120.0).abs() < 0.1, "peak {}", c.max_speed() * 3.6);
    }

    #[test]
    fn builtin_wltc_duration_and_peak() {
        let c = DriveCycle::load_named("wltc", 1.0).unwrap();
        assert_eq!(c.duration(), 1800.0);
        assert!((c.max_speed() * 3.6 - 131.3).abs() < 0.1);
    }

    #[test]
    fn parse_rejects_bad_rows_with_line_number() {
        let text = "time_s,speed_mps\n0,0\n1,abc\n";
        let err = DriveCycle::parse_csv("t", text, 1.0).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn parse_rejects_non_monotone_time() {
        let text = "time_s,speed_mps\n0,0\n2,1\n1,1\n";
        assert!(matches!(
            DriveCycle::parse_csv("t", text, 1.0),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn demand_power_zero_at_rest() {
        let c = DriveCycle::from_speeds("t", 1.0, vec![0.0, 0.0, 0.0]).unwrap();
        assert_eq!(c.demand_power(1.0, &table1_params()).unwrap(), 0.0);
    }

    #[test]
    fn demand_power_steady_highway() {
        // 33.33 m/s steady: rolling + aero only, hand-evaluated road load.
        let v = 33.33;
        let c = DriveCycle::from_speeds("t", 1.0, vec![v; 5]).unwrap();
        let p = c.demand_power(2.0, &table1_params()).unwrap();
        let expect = v * (1830.0 * 9.81 * 0.013 + 0.5 * 1.2 * 0.325 * 2.3 * v * v);
        assert!((p - expect).abs() < 1e-9);
        assert!((p - 24.4e3).abs() < 0.2e3, "got {p}");
    }

    #[test]
    fn demand_power_out_of_range() {
        let c = DriveCycle::from_speeds("t", 1.0, vec![0.0, 1.0]).unwrap();
        assert!(matches!(c.demand_power(5.0, &table1_params()), Err(Error::Domain(_))));
    }

    #[test]
    fn future_window_slice_and_padding() {
        let c = DriveCycle::from_speeds("t", 1.0, vec![0.0, 1.0, 2.0, 3.0, 4.0]).unwrap();
        let cfg = HorizonConfig { t_avg: 2.0, t_fx: 3.0 };
        assert_eq!(c.future_speed_window(0.0, &cfg), vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(c.future_speed_window(4.0, &cfg), vec![4.0; 4]);
    }

    #[test]
    fn average_power_examples() {
        let cfg = HorizonConfig { t_avg: 2.0, t_fx: 3.0 };
        assert_eq!(average_demand_power(&[10e3; 8], &cfg, 1.0).unwrap(), 10e3);
        assert_eq!(average_demand_power(&[0.0, 20e3], &cfg, 1.0).unwrap(), 10e3);
        assert!(average_demand_power(&[], &cfg, 1.0).is_err());
    }

    #[test]
    fn average_power_matches_running_sum_oracle() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 50e3
        };
        let trace: Vec<f64> = (0..200).map(|_| next()).collect();
        let cfg = HorizonConfig { t_avg: 30.0, t_fx: 10.0 };
        let got = average_demand_power(&trace, &cfg, 1.0).unwrap();
        let mut sum = 0.0;
        for v in &trace[trace.len() - 30..] {
            sum += v;
        }
        assert!((got - sum / 30.0).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn window_length_invariant(start in 0.0f64..400.0, n in 2usize..200) {
            let speeds: Vec<f64> = (0..n).map(|i| (i % 17) as f64).collect();
            let c = DriveCycle::from_speeds("t", 1.0, speeds).unwrap();
            let cfg = HorizonConfig { t_avg: 10.0, t_fx: 10.0 };
            prop_assert_eq!(c.future_speed_window(start, &cfg).len(), 11);
        }

        #[test]
        fn resample_idempotent_on_uniform_cycle(n in 2usize..100) {
            let speeds: Vec<f64> = (0..n).map(|i| ((i * 7) % 23) as f64).collect();
            let pts: Vec<(f64, f64)> =
                speeds.iter().enumerate().map(|(i, v)| (i as f64, *v)).collect();
            let direct = DriveCycle::from_speeds("t", 1.0, speeds).unwrap();
            let resampled = DriveCycle::resample("t", &pts, 1.0).unwrap();
            prop_assert_eq!(direct.speeds(), resampled.speeds());
            let p = VehicleParams::default();
            for i in 0..direct.len() {
                prop_assert_eq!(direct.demand_power_at(i, &p), resampled.demand_power_at(i, &p));
            }
        }
    }
}
