//! Scalar Dormand–Prince 5(4) integrator with continuous output.

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// |y| above this counts as escape to infinity.
    pub bound: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-10,
            bound: 1e8,
            max_steps: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OdeFailure {
    /// The solution left `|y| <= bound` (or became non-finite) near `t`.
    Escaped { t: f64 },
    Stalled { t: f64, reason: String },
}

/// Values and right-hand sides at the requested output points.
#[derive(Clone, Debug)]
pub struct OdeSolution {
    pub y: Vec<f64>,
    pub dy: Vec<f64>,
    pub steps: usize,
    pub rejected: usize,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Integrates y' = f(t, y) from (t0, y0) and samples the dense output at
/// `outputs` (non-decreasing, all >= t0).
pub fn dopri5<F: FnMut(f64, f64) -> f64>(
    mut f: F,
    t0: f64,
    y0: f64,
    outputs: &[f64],
    opts: &OdeOptions,
) -> Result<OdeSolution, OdeFailure> {
    let mut ys = Vec::with_capacity(outputs.len());
    let mut dys = Vec::with_capacity(outputs.len());
    let t_end = match outputs.last() {
        Some(&t) => t,
        None => {
            return Ok(OdeSolution {
                y: ys,
                dy: dys,
                steps: 0,
                rejected: 0,
            })
        }
    };
    let mut next = 0;
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, y);
    while next < outputs.len() && outputs[next] <= t0 {
        ys.push(y0);
        dys.push(k1);
        next += 1;
    }
    let span = t_end - t0;
    if span <= 0.0 {
        return Ok(OdeSolution {
            y: ys,
            dy: dys,
            steps: 0,
            rejected: 0,
        });
    }
    let mut h = initial_step(&mut f, t, y, k1, span, opts);
    let mut steps = 0;
    let mut rejected = 0;
    let mut err_old = 1e-4f64;

    while next < outputs.len() {
        if steps + rejected >= opts.max_steps {
            return Err(OdeFailure::Stalled {
                t,
                reason: format!("step budget of {} exhausted", opts.max_steps),
            });
        }
        let h_min = 16.0 * f64::EPSILON * t.abs().max(span);
        if h < h_min {
            return Err(OdeFailure::Stalled {
                t,
                reason: format!("step size {h:.3e} underflowed"),
            });
        }
        if t + h > t_end {
            h = t_end - t;
        }
        let k2 = f(t + C2 * h, y + h * A21 * k1);
        let k3 = f(t + C3 * h, y + h * (A31 * k1 + A32 * k2));
        let k4 = f(t + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3));
        let k5 = f(
            t + C5 * h,
            y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4),
        );
        let k6 = f(
            t + h,
            y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5),
        );
        let y_new = y + h * (A71 * k1 + A73 * k3 + A74 * k4 + A75 * k5 + A76 * k6);
        let t_new = if t + h >= t_end { t_end } else { t + h };
        let k7 = f(t_new, y_new);
        let err_est = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
        let scale = opts.atol + opts.rtol * y.abs().max(y_new.abs());
        let err = (err_est / scale).abs();

        if !err.is_finite() || !y_new.is_finite() {
            if y.abs() > 0.01 * opts.bound || h < 1e3 * h_min {
                return Err(OdeFailure::Escaped { t });
            }
            h *= 0.2;
            rejected += 1;
            continue;
        }

        if err <= 1.0 {
            steps += 1;
            let ydiff = y_new - y;
            let bspl = h * k1 - ydiff;
            let r = [
                y,
                ydiff,
                bspl,
                ydiff - h * k7 - bspl,
                h * (D1 * k1 + D3 * k3 + D4 * k4 + D5 * k5 + D6 * k6 + D7 * k7),
            ];
            while next < outputs.len() && outputs[next] <= t_new {
                let to = outputs[next];
                let yo = if to == t_new {
                    y_new
                } else {
                    let s = (to - t) / h;
                    let s1 = 1.0 - s;
                    r[0] + s * (r[1] + s1 * (r[2] + s * (r[3] + s1 * r[4])))
                };
                ys.push(yo);
                dys.push(if to == t_new { k7 } else { f(to, yo) });
                next += 1;
            }
            if y_new.abs() > opts.bound {
                return Err(OdeFailure::Escaped { t: t_new });
            }
            t = t_new;
            y = y_new;
            k1 = k7;
            // PI controller (Gustafsson), exponents as in Hairer's DOPRI5
            let e = err.max(1e-10);
            let fac = (0.9 * e.powf(-0.17) * err_old.powf(0.04)).clamp(0.2, 10.0);
            err_old = e;
            h *= fac;
        } else {
            rejected += 1;
            h *= (0.9 * err.powf(-0.2)).max(0.2);
        }
    }
    Ok(OdeSolution {
        y: ys,
        dy: dys,
        steps,
        rejected,
    })
}

fn initial_step<F: FnMut(f64, f64) -> f64>(
    f: &mut F,
    t: f64,
    y: f64,
    k1: f64,
    span: f64,
    opts: &OdeOptions,
) -> f64 {
    let sk = opts.atol + opts.rtol * y.abs();
    let d0 = (y / sk).abs();
    let d1 = (k1 / sk).abs();
    let mut h = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    h = h.min(span);
    let k2 = f(t + h, y + h * k1);
    let d2 = ((k2 - k1) / sk).abs() / h;
    let dm = d1.max(d2);
    let h1 = if dm <= 1e-15 {
        (h * 1e-3).max(1e-6)
    } else {
        (0.01 / dm).powf(0.2)
    };
    (100.0 * h).min(h1).min(span)
}
