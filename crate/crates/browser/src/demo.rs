//! Plain functions behind the page's three panels. Curves come back as flat
//! `[x0, y0, x1, y1, ...]` arrays, which cross into JavaScript as a
//! `Float64Array` without further marshalling.

use std::collections::BTreeMap;

use num_complex::Complex64;

use fdeg_core::contour::{self, QuadratureSpec};
use fdeg_core::degree;
use fdeg_core::model::SetupParams;
use fdeg_core::mu;
use fdeg_core::qcas::VarId;

fn params(m: u32, d: u32, t: u32, a: u32) -> Result<SetupParams, String> {
    SetupParams::new(m.into(), d.into(), t.into(), a.into()).map_err(|e| e.to_string())
}

/// The closed formal degree with `deg(sigma)` left symbolic.
pub fn degree_text(m: u32, d: u32, t: u32, a: u32) -> Result<String, String> {
    Ok(degree::closed_form_degree(&params(m, d, t, a)?).to_string())
}

/// The formal degree with `deg(sigma) = 1` at `samples` values of `q`
/// spread evenly over `[q_lo, q_hi]`.
pub fn degree_curve(m: u32, d: u32, t: u32, a: u32, q_lo: f64, q_hi: f64, samples: u32) -> Result<Vec<f64>, String> {
    if q_lo.is_nan() || q_lo <= 1.0 || q_hi.is_nan() || q_hi <= q_lo || samples < 2 {
        return Err("need 1 < q_lo < q_hi and at least 2 samples".into());
    }
    let form = degree::closed_form_degree(&params(m, d, t, a)?).factored;
    let empty = BTreeMap::new();
    let mut out = Vec::with_capacity(2 * samples as usize);
    for k in 0..samples {
        let q = q_lo + (q_hi - q_lo) * k as f64 / (samples - 1) as f64;
        let v = form.eval_numeric(q, &empty).map_err(|e| e.to_string())?;
        out.extend([q, v.re]);
    }
    Ok(out)
}

/// The level-`l` ratio of `mu` at `z = i y` over one period in `y`. At
/// `l = d = 2` this is `mu` itself.
pub fn mu_unitary(d: u32, t: u32, a: u32, level: u32, q: f64, samples: u32) -> Result<Vec<f64>, String> {
    if q.is_nan() || q <= 1.0 || samples < 2 {
        return Err("need q > 1 and at least 2 samples".into());
    }
    let p = params(t, d, t, a)?;
    let z = VarId(1);
    let f = mu::mu_level_ratio_closed(&p, level, z).map_err(|e| e.to_string())?;
    let period = 2.0 * std::f64::consts::PI / q.ln();
    let mut out = Vec::with_capacity(2 * samples as usize);
    for k in 0..samples {
        let y = period * k as f64 / samples as f64;
        let env = BTreeMap::from([(z, Complex64::new(0.0, y))]);
        let v = f.eval_numeric(q, &env).map_err(|e| e.to_string())?;
        out.extend([y, v.re]);
    }
    Ok(out)
}

/// `[lhs, rhs, relative error, level 1 term, ..., level d term]` at the
/// default shift.
pub fn contour_terms(m: u32, d: u32, t: u32, a: u32, q: f64, nodes: u32) -> Result<Vec<f64>, String> {
    if d > 3 {
        return Err("the browser demo integrates up to d = 3".into());
    }
    let p = params(m, d, t, a)?;
    let spec = QuadratureSpec::new(nodes as usize, q, 1e-6);
    let r = contour::verify_residue_decomposition(&p, &spec, None).map_err(|e| e.to_string())?;
    let mut out = vec![r.lhs.re, r.rhs.re, r.rel_error];
    out.extend(r.terms.iter().map(|z| z.re));
    Ok(out)
}
