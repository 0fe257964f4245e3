//! Browser bindings for the interactive demo in `www/`.
//!
//! The functions in [`demo`] hold the logic and return `Result<_, String>` so
//! they can be tested natively; the exported wrappers only convert errors to
//! JavaScript exceptions. All arrays cross the boundary as flat `Float64Array`s.

use wasm_bindgen::prelude::*;

pub mod demo {
    use diraccomb::bands::{band_structure, DeltaPrimeComb};
    use diraccomb::energy::{comb_energy, integrand_i};
    use diraccomb::{CombCouplings, CombParams, QuadratureConfig};

    fn params(w0: f64, w1: f64, a: f64) -> Result<CombParams, String> {
        Ok(CombCouplings::new(w0, w1, a)
            .map_err(|e| e.to_string())?
            .params())
    }

    /// `[θ_0..θ_m, k_0(θ_0..θ_m), k_1(..), .., k_min_0, k_max_0, k_min_1, ..]`.
    pub fn bands(
        w0: f64,
        w1: f64,
        a: f64,
        n_bands: usize,
        theta_points: usize,
    ) -> Result<Vec<f64>, String> {
        let source = DeltaPrimeComb::from_params(params(w0, w1, a)?);
        let s = band_structure(&source, n_bands, theta_points, &QuadratureConfig::default())
            .map_err(|e| e.to_string())?;
        let mut out: Vec<f64> = s.bands[0].samples.iter().map(|x| x.theta).collect();
        for b in &s.bands {
            out.extend(b.samples.iter().map(|x| x.k));
        }
        for b in &s.bands {
            out.extend([b.k_min, b.k_max]);
        }
        Ok(out)
    }

    /// `[k_0..k_m, I(k_0)..I(k_m), E, abs_err]` on a uniform grid over `[0, k_max]`.
    pub fn integrand(
        w0: f64,
        w1: f64,
        a: f64,
        k_max: f64,
        points: usize,
    ) -> Result<Vec<f64>, String> {
        if k_max.is_nan() || k_max <= 0.0 || points < 2 {
            return Err("need k_max > 0 and at least two points".into());
        }
        let p = params(w0, w1, a)?;
        let ks: Vec<f64> = (0..points)
            .map(|i| k_max * i as f64 / (points - 1) as f64)
            .collect();
        let values = ks
            .iter()
            .map(|&k| integrand_i(k, &p))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let e = comb_energy(&p, &QuadratureConfig::default()).map_err(|e| e.to_string())?;
        let mut out = ks;
        out.extend(values);
        out.extend([e.value, e.abs_err]);
        Ok(out)
    }

    /// `[a_0..a_m, E(a_0)..E(a_m)]` on a logarithmic grid.
    pub fn energy_vs_a(
        w0: f64,
        w1: f64,
        a_min: f64,
        a_max: f64,
        points: usize,
    ) -> Result<Vec<f64>, String> {
        if !(a_min > 0.0 && a_max > a_min) || points < 2 {
            return Err("need 0 < a_min < a_max and at least two points".into());
        }
        let ratio = a_max / a_min;
        let spacings: Vec<f64> = (0..points)
            .map(|i| a_min * ratio.powf(i as f64 / (points - 1) as f64))
            .collect();
        let cfg = QuadratureConfig::default();
        let mut energies = Vec::with_capacity(points);
        for &a in &spacings {
            let e = comb_energy(&params(w0, w1, a)?, &cfg).map_err(|e| e.to_string())?;
            energies.push(e.value);
        }
        let mut out = spacings;
        out.extend(energies);
        Ok(out)
    }
}

fn js(r: Result<Vec<f64>, String>) -> Result<Vec<f64>, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bands(
    w0: f64,
    w1: f64,
    a: f64,
    n_bands: usize,
    theta_points: usize,
) -> Result<Vec<f64>, JsError> {
    js(demo::bands(w0, w1, a, n_bands, theta_points))
}

#[wasm_bindgen]
pub fn integrand(w0: f64, w1: f64, a: f64, k_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    js(demo::integrand(w0, w1, a, k_max, points))
}

#[wasm_bindgen(js_name = energyVsA)]
pub fn energy_vs_a(
    w0: f64,
    w1: f64,
    a_min: f64,
    a_max: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    js(demo::energy_vs_a(w0, w1, a_min, a_max, points))
}
