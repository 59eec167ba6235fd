//! Invariants at a single chart point, assembled from pointwise values.
//!
//! Only derivatives are taken symbolically. The final curvature and
//! second-fundamental-form values are combined from numbers at the point and
//! never pass through the reduction of the symbolic constants, so they serve
//! as an independent oracle for the constant invariants.

use num_traits::Zero;

use crate::algebra::GaussianRational;
use crate::ambient::MatRF;
use crate::error::{Error, Result};
use crate::invariants::{a_z, a_zb};
use crate::sequences::BundleMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointValues {
    pub point: GaussianRational,
    pub lambda2: GaussianRational,
    pub k: GaussianRational,
    pub b2: GaussianRational,
}

type Num = Vec<Vec<GaussianRational>>;

fn trace_prod(a: &Num, b: &Num) -> GaussianRational {
    let n = a.len();
    let mut acc = GaussianRational::zero();
    for j in 0..n {
        for l in 0..n {
            acc += &(&a[j][l] * &b[l][j]);
        }
    }
    acc
}

pub fn invariants_at(b: &BundleMap, z0: &GaussianRational) -> Result<PointValues> {
    let az = a_z(b)?;
    let azb = a_zb(b)?;
    invariants_at_from(&az, &azb, z0)
}

/// Pointwise values from precomputed `A_z` and `A_z̄`.
pub fn invariants_at_from(az: &MatRF, azb: &MatRF, z0: &GaussianRational) -> Result<PointValues> {
    let az0 = az.evaluate_at(z0)?;
    let azb0 = azb.evaluate_at(z0)?;
    let u = -trace_prod(&az0, &azb0);
    if u.is_zero() {
        return Err(Error::DegenerateMetric);
    }

    // ∂∂̄ log u = (u u_zzb - u_z u_zb) / u^2, from derivatives of λ^2 evaluated at z0.
    let l2 = az.trace_of_product(azb)?.neg();
    let uz = l2.d_z();
    let u_z = uz.evaluate_at(z0)?;
    let u_zb = l2.d_zb().evaluate_at(z0)?;
    let u_zzb = uz.d_zb().evaluate_at(z0)?;
    let u3 = &(&u * &u) * &u;
    let lap = &(&u * &u_zzb) - &(&u_z * &u_zb);
    let k = (&lap * &GaussianRational::from_int(-2)).checked_div(&u3)?;

    // P = ∂A_z / λ^2 - A_z ∂λ^2 / λ^4 at z0.
    let daz0 = az.d_z().evaluate_at(z0)?;
    let inv_u = u.inv()?;
    let c = &u_z * &(&inv_u * &inv_u);
    let n = az.dim();
    let p: Num = (0..n)
        .map(|j| (0..n).map(|l| &(&daz0[j][l] * &inv_u) - &(&az0[j][l] * &c)).collect())
        .collect();
    let w = az.space().weights();
    let mut tpp = GaussianRational::zero();
    for j in 0..n {
        for l in 0..n {
            let ratio = GaussianRational::from_real(&w[j] / &w[l]);
            tpp += &(&(&p[j][l] * &p[j][l].conj()) * &ratio);
        }
    }
    let b2 = &tpp * &GaussianRational::from_int(4);

    Ok(PointValues {
        point: z0.clone(),
        lambda2: u,
        k,
        b2,
    })
}
