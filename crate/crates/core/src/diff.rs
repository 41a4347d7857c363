//! Central finite differences with one Richardson step over `{h, h/2}`.

use crate::lorentz::Vec3R;
use crate::surface::{EvalError, SurfacePatch};

/// First and second partial derivatives of a patch at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub xu: Vec3R,
    pub xv: Vec3R,
    pub xuu: Vec3R,
    pub xuv: Vec3R,
    pub xvv: Vec3R,
}

/// Step actually used at `(u, v)`: `h` scaled by the local coordinate magnitude.
pub fn scaled_step(h: f64, u: f64, v: f64) -> f64 {
    h * 1.0_f64.max(u.abs()).max(v.abs())
}

fn raw(p: &SurfacePatch, u: f64, v: f64, h: f64) -> Result<Partials, EvalError> {
    let at = |du: f64, dv: f64| p.point(u + du, v + dv);
    let c = at(0.0, 0.0)?;
    let (e, w) = (at(h, 0.0)?, at(-h, 0.0)?);
    let (n, s) = (at(0.0, h)?, at(0.0, -h)?);
    let (ne, nw) = (at(h, h)?, at(-h, h)?);
    let (se, sw) = (at(h, -h)?, at(-h, -h)?);
    let inv2h = 0.5 / h;
    let invh2 = 1.0 / (h * h);
    Ok(Partials {
        xu: (e - w).scale(inv2h),
        xv: (n - s).scale(inv2h),
        xuu: (e - c.scale(2.0) + w).scale(invh2),
        xvv: (n - c.scale(2.0) + s).scale(invh2),
        xuv: (ne - nw - se + sw).scale(0.25 * invh2),
    })
}

fn richardson(coarse: Vec3R, fine: Vec3R) -> Vec3R {
    (fine.scale(4.0) - coarse).scale(1.0 / 3.0)
}

/// Richardson-extrapolated partials; `h` is the base step before scaling.
pub fn partials(p: &SurfacePatch, u: f64, v: f64, h: f64) -> Result<Partials, EvalError> {
    let h = scaled_step(h, u, v);
    let coarse = raw(p, u, v, h)?;
    let fine = raw(p, u, v, 0.5 * h)?;
    Ok(Partials {
        xu: richardson(coarse.xu, fine.xu),
        xv: richardson(coarse.xv, fine.xv),
        xuu: richardson(coarse.xuu, fine.xuu),
        xuv: richardson(coarse.xuv, fine.xuv),
        xvv: richardson(coarse.xvv, fine.xvv),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::Vec3;
    use crate::surface::Domain;

    #[test]
    fn derivatives_of_a_smooth_patch() {
        let p = SurfacePatch::from_fn("t", Domain::square(2.0), |u, v| {
            Vec3::new(u.sin() * v.exp(), u * u * v, (u * v).cos())
        });
        let (u, v) = (0.4, -0.3);
        let d = partials(&p, u, v, 1e-3).unwrap();
        let xu = Vec3::new(u.cos() * v.exp(), 2.0 * u * v, -v * (u * v).sin());
        let xuv = Vec3::new(u.cos() * v.exp(), 2.0 * u, -(u * v).sin() - u * v * (u * v).cos());
        let xvv = Vec3::new(u.sin() * v.exp(), 0.0, -u * u * (u * v).cos());
        assert!((d.xu - xu).max_abs() < 1e-11);
        assert!((d.xuv - xuv).max_abs() < 1e-8);
        assert!((d.xvv - xvv).max_abs() < 1e-8);
    }
}
