//! Vectors and matrices of rational functions over a weighted Hermitian `C^N`.
//!
//! A vector whose natural components carry square-root factors
//! `r_j * sqrt(w_j)` is stored as `r_j` together with the weight `w_j`, so
//! every inner product, adjoint and projection stays rational.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::{poly_gcd, rational_to_string, BiPoly, GaussianRational, RationalFunction};
use crate::error::{Error, Result};

/// `C^N` with the diagonal Hermitian form `<u, v> = sum_j u_j conj(v_j) w_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightedSpace {
    weights: Vec<BigRational>,
}

impl WeightedSpace {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(j) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight(j));
        }
        Ok(Self { weights })
    }

    pub fn from_ints(ws: &[i64]) -> Result<Self> {
        Self::new(ws.iter().map(|&w| BigRational::from_integer(w.into())).collect())
    }

    /// All weights equal to one.
    pub fn standard(n: usize) -> Self {
        Self {
            weights: vec![BigRational::one(); n.max(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn weight(&self, j: usize) -> &BigRational {
        &self.weights[j]
    }

    pub fn weight_strings(&self) -> Vec<String> {
        self.weights.iter().map(rational_to_string).collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: self.dim(),
                right: other.dim(),
            })
        }
    }
}

/// A vector of rational functions in a weighted space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VecRF {
    space: WeightedSpace,
    comps: Vec<RationalFunction>,
}

impl VecRF {
    pub fn new(space: WeightedSpace, comps: Vec<RationalFunction>) -> Result<Self> {
        if comps.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: comps.len(),
            });
        }
        Ok(Self { space, comps })
    }

    pub fn zero(space: WeightedSpace) -> Self {
        let comps = vec![RationalFunction::zero(); space.dim()];
        Self { space, comps }
    }

    /// The coordinate vector `e_index`.
    pub fn basis(space: WeightedSpace, index: usize) -> Result<Self> {
        if index >= space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: index + 1,
            });
        }
        let mut v = Self::zero(space);
        v.comps[index] = RationalFunction::one();
        Ok(v)
    }

    pub fn space(&self) -> &WeightedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.comps
    }

    pub fn component(&self, j: usize) -> &RationalFunction {
        &self.comps[j]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RationalFunction::is_zero)
    }

    /// Moves the vector into another space of the same dimension.
    ///
    /// A coordinate may change weight only where the component vanishes.
    pub fn reweighted(&self, space: &WeightedSpace) -> Result<Self> {
        if space.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: self.dim(),
            });
        }
        for (j, c) in self.comps.iter().enumerate() {
            if !c.is_zero() && self.space.weight(j) != space.weight(j) {
                return Err(Error::WeightConflict {
                    index: j,
                    left: rational_to_string(self.space.weight(j)),
                    right: rational_to_string(space.weight(j)),
                });
            }
        }
        Ok(Self {
            space: space.clone(),
            comps: self.comps.clone(),
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.space.check(&o.space)?;
        Ok(self.zip(o, RationalFunction::add))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.space.check(&o.space)?;
        Ok(self.zip(o, RationalFunction::sub))
    }

    fn zip(&self, o: &Self, f: fn(&RationalFunction, &RationalFunction) -> RationalFunction) -> Self {
        Self {
            space: self.space.clone(),
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        Self {
            space: self.space.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, r: &RationalFunction) -> Self {
        self.map(|c| c.mul(r))
    }

    pub fn d_z(&self) -> Self {
        self.map(RationalFunction::d_z)
    }

    pub fn d_zb(&self) -> Self {
        self.map(RationalFunction::d_zb)
    }

    /// Removes the scalar content: clears denominators, divides by the gcd of
    /// the numerators, and makes the first nonzero component's graded-lex
    /// leading coefficient 1. The spanned line is unchanged.
    pub fn content_normalized(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSection);
        }
        let mut lcm = BiPoly::one();
        for c in &self.comps {
            if c.is_zero() || c.den().is_one() {
                continue;
            }
            let g = poly_gcd(&lcm, c.den());
            lcm = lcm.mul(&c.den().div_exact(&g).expect("gcd divides"));
        }
        let nums: Vec<BiPoly> = self
            .comps
            .iter()
            .map(|c| {
                if c.is_zero() {
                    BiPoly::zero()
                } else {
                    c.num().mul(&lcm.div_exact(c.den()).expect("lcm is a multiple"))
                }
            })
            .collect();
        let mut g = BiPoly::zero();
        for n in &nums {
            if !n.is_zero() {
                g = poly_gcd(&g, n);
                if g.is_one() {
                    break;
                }
            }
        }
        let first = nums.iter().find(|n| !n.is_zero()).expect("nonzero vector");
        let q = first.div_exact(&g).expect("gcd divides");
        let lead = q.leading_grlex().expect("nonzero").1.inv()?;
        let comps = nums
            .into_iter()
            .map(|n| RationalFunction::from_poly(n.div_exact(&g).expect("gcd divides").scale(&lead)))
            .collect();
        Ok(Self {
            space: self.space.clone(),
            comps,
        })
    }

    pub fn evaluate_at(&self, z0: &GaussianRational) -> Result<Vec<GaussianRational>> {
        self.comps.iter().map(|c| c.evaluate_at(z0)).collect()
    }
}

/// Weighted Hermitian inner product `sum_j u_j conj(v_j) w_j`.
pub fn winner(u: &VecRF, v: &VecRF) -> Result<RationalFunction> {
    u.space.check(&v.space)?;
    let mut acc = RationalFunction::zero();
    for (j, (a, b)) in u.comps.iter().zip(&v.comps).enumerate() {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let t = a.mul(&b.conj()).scale_rational(u.space.weight(j));
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// Brings all sections into one weighted space.
///
/// For each coordinate the weights of the sections that are nonzero there
/// must agree. Coordinates where every section vanishes take the first
/// section's weight.
pub fn unify_spaces(vs: &[VecRF]) -> Result<Vec<VecRF>> {
    let first = vs.first().ok_or(Error::EmptySpan)?;
    let n = first.dim();
    for v in vs {
        if v.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.dim(),
            });
        }
    }
    let mut weights = first.space.weights.clone();
    for j in 0..n {
        let mut chosen: Option<&BigRational> = None;
        for v in vs {
            if v.comps[j].is_zero() {
                continue;
            }
            let w = v.space.weight(j);
            match chosen {
                None => chosen = Some(w),
                Some(c) if c != w => {
                    return Err(Error::WeightConflict {
                        index: j,
                        left: rational_to_string(c),
                        right: rational_to_string(w),
                    })
                }
                _ => {}
            }
        }
        if let Some(w) = chosen {
            weights[j] = w.clone();
        }
    }
    let space = WeightedSpace::new(weights)?;
    vs.iter().map(|v| v.reweighted(&space)).collect()
}

/// A square matrix of rational functions acting on a weighted space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatRF {
    space: WeightedSpace,
    n: usize,
    entries: Vec<RationalFunction>,
}

impl MatRF {
    pub fn zero(space: WeightedSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            n,
            entries: vec![RationalFunction::zero(); n * n],
        }
    }

    pub fn identity(space: WeightedSpace) -> Self {
        let mut m = Self::zero(space);
        for j in 0..m.n {
            m.entries[j * m.n + j] = RationalFunction::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_rows(space: WeightedSpace, rows: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let n = space.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        Ok(Self {
            space,
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn space(&self) -> &WeightedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, l: usize) -> &RationalFunction {
        &self.entries[j * self.n + l]
    }

    pub fn set(&mut self, j: usize, l: usize, v: RationalFunction) {
        self.entries[j * self.n + l] = v;
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalFunction::is_zero)
    }

    fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        Self {
            space: self.space.clone(),
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn zip(&self, o: &Self, f: fn(&RationalFunction, &RationalFunction) -> RationalFunction) -> Result<Self> {
        self.space.check(&o.space)?;
        Ok(Self {
            space: self.space.clone(),
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, RationalFunction::add)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, RationalFunction::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(RationalFunction::neg)
    }

    pub fn scale(&self, r: &RationalFunction) -> Self {
        if r.is_zero() {
            return Self::zero(self.space.clone());
        }
        self.map(|e| e.mul(r))
    }

    pub fn scale_const(&self, c: &GaussianRational) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn d_z(&self) -> Self {
        self.map(RationalFunction::d_z)
    }

    pub fn d_zb(&self) -> Self {
        self.map(RationalFunction::d_zb)
    }

    /// Entrywise conjugation (no transpose, no weights).
    pub fn conj_entries(&self) -> Self {
        self.map(RationalFunction::conj)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.space.check(&o.space)?;
        let n = self.n;
        let mut out = Self::zero(self.space.clone());
        for j in 0..n {
            for k in 0..n {
                let a = self.get(j, k);
                if a.is_zero() {
                    continue;
                }
                for l in 0..n {
                    let b = o.get(k, l);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = j * n + l;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &VecRF) -> Result<VecRF> {
        self.space.check(&v.space)?;
        let n = self.n;
        let comps = (0..n)
            .map(|j| {
                let mut acc = RationalFunction::zero();
                for k in 0..n {
                    let (a, b) = (self.get(j, k), &v.comps[k]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect();
        Ok(VecRF {
            space: self.space.clone(),
            comps,
        })
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// Weighted adjoint: `(M^†)_{jl} = (w_l / w_j) conj(M_{lj})`.
    pub fn wadjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(self.space.clone());
        for j in 0..n {
            for l in 0..n {
                let e = self.get(l, j);
                if e.is_zero() {
                    continue;
                }
                let ratio = self.space.weight(l) / self.space.weight(j);
                out.entries[j * n + l] = e.conj().scale_rational(&ratio);
            }
        }
        out
    }

    pub fn trace(&self) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for j in 0..self.n {
            acc = acc.add(self.get(j, j));
        }
        acc
    }

    /// `tr(AB)` without forming the product.
    pub fn trace_of_product(&self, o: &Self) -> Result<RationalFunction> {
        self.space.check(&o.space)?;
        let mut acc = RationalFunction::zero();
        for j in 0..self.n {
            for l in 0..self.n {
                let (a, b) = (self.get(j, l), o.get(l, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
        }
        Ok(acc)
    }

    /// `tr(A A^†)` without forming the product.
    pub fn norm_sq(&self) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for j in 0..self.n {
            for l in 0..self.n {
                let a = self.get(j, l);
                if a.is_zero() {
                    continue;
                }
                let ratio = self.space.weight(j) / self.space.weight(l);
                acc = acc.add(&a.mul(&a.conj()).scale_rational(&ratio));
            }
        }
        acc
    }

    /// The columns as vectors.
    pub fn columns(&self) -> Vec<VecRF> {
        (0..self.n)
            .map(|l| VecRF {
                space: self.space.clone(),
                comps: (0..self.n).map(|j| self.get(j, l).clone()).collect(),
            })
            .collect()
    }

    /// Rank over the field of rational functions.
    pub fn generic_rank(&self) -> usize {
        let rows: Vec<Vec<RationalFunction>> = (0..self.n)
            .map(|j| self.entries[j * self.n..(j + 1) * self.n].to_vec())
            .collect();
        echelon_pivots(rows, self.n).len()
    }

    pub fn evaluate_at(&self, z0: &GaussianRational) -> Result<Vec<Vec<GaussianRational>>> {
        (0..self.n)
            .map(|j| (0..self.n).map(|l| self.get(j, l).evaluate_at(z0)).collect())
            .collect()
    }
}

/// Outer product `(u v^†)_{jl} = u_j conj(v_l) w_l`.
pub fn outer(u: &VecRF, v: &VecRF) -> Result<MatRF> {
    u.space.check(&v.space)?;
    let n = u.dim();
    let mut m = MatRF::zero(u.space.clone());
    for l in 0..n {
        let b = &v.comps[l];
        if b.is_zero() {
            continue;
        }
        let cb = b.conj().scale_rational(u.space.weight(l));
        for j in 0..n {
            let a = &u.comps[j];
            if !a.is_zero() {
                m.entries[j * n + l] = a.mul(&cb);
            }
        }
    }
    Ok(m)
}

/// Row reduction over the rational-function field; returns the pivot column indices.
fn echelon_pivots(mut rows: Vec<Vec<RationalFunction>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        let pivot_row: Vec<RationalFunction> = rows[r].iter().map(|e| e.mul(&inv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for k in c..ncols {
                if !pivot_row[k].is_zero() {
                    row[k] = row[k].sub(&f.mul(&pivot_row[k]));
                }
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Indices of a maximal generically independent subset, scanning in order.
pub fn independent_subset(vs: &[VecRF]) -> Vec<usize> {
    let Some(first) = vs.first() else {
        return Vec::new();
    };
    let n = first.dim();
    let rows: Vec<Vec<RationalFunction>> = (0..n)
        .map(|j| vs.iter().map(|v| v.comps[j].clone()).collect())
        .collect();
    echelon_pivots(rows, vs.len())
}

fn invert(g: Vec<Vec<RationalFunction>>) -> Result<Vec<Vec<RationalFunction>>> {
    let k = g.len();
    match k {
        1 => Ok(vec![vec![g[0][0].inv().map_err(|_| Error::DependentSections)?]]),
        2 => {
            let det = g[0][0].mul(&g[1][1]).sub(&g[0][1].mul(&g[1][0]));
            let di = det.inv().map_err(|_| Error::DependentSections)?;
            Ok(vec![
                vec![g[1][1].mul(&di), g[0][1].neg().mul(&di)],
                vec![g[1][0].neg().mul(&di), g[0][0].mul(&di)],
            ])
        }
        _ => {
            let mut a = g;
            let mut inv: Vec<Vec<RationalFunction>> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            if i == j {
                                RationalFunction::one()
                            } else {
                                RationalFunction::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            for c in 0..k {
                let p = (c..k).find(|&i| !a[i][c].is_zero()).ok_or(Error::DependentSections)?;
                a.swap(c, p);
                inv.swap(c, p);
                let pi = a[c][c].inv()?;
                a[c] = a[c].iter().map(|e| e.mul(&pi)).collect();
                inv[c] = inv[c].iter().map(|e| e.mul(&pi)).collect();
                for i in 0..k {
                    if i == c || a[i][c].is_zero() {
                        continue;
                    }
                    let f = a[i][c].clone();
                    for j in 0..k {
                        a[i][j] = a[i][j].sub(&f.mul(&a[c][j]));
                        inv[i][j] = inv[i][j].sub(&f.mul(&inv[c][j]));
                    }
                }
            }
            Ok(inv)
        }
    }
}

/// Orthogonal projection onto the span of `vs`: `P = V G^{-1} V^†` with
/// Gram matrix `G_{ab} = <v_b, v_a>`.
pub fn span_projection(vs: &[VecRF]) -> Result<MatRF> {
    let first = vs.first().ok_or(Error::EmptySpan)?;
    let space = first.space.clone();
    for v in vs {
        space.check(&v.space)?;
    }
    if vs.iter().any(VecRF::is_zero) {
        return Err(Error::ZeroSection);
    }
    let k = vs.len();
    let mut g = vec![vec![RationalFunction::zero(); k]; k];
    for a in 0..k {
        for b in 0..k {
            g[a][b] = if b < a { g[b][a].conj() } else { winner(&vs[b], &vs[a])? };
        }
    }
    let gi = invert(g)?;
    let n = space.dim();
    // U = V G^{-1}, then P_{jl} = sum_b U_{jb} conj(v_{b,l}) w_l.
    let mut u = vec![vec![RationalFunction::zero(); k]; n];
    for (j, row) in u.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            let mut acc = RationalFunction::zero();
            for a in 0..k {
                let (x, y) = (&vs[a].comps[j], &gi[a][b]);
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul(y));
                }
            }
            *slot = acc;
        }
    }
    let vdag: Vec<Vec<RationalFunction>> = vs
        .iter()
        .map(|v| {
            (0..n)
                .map(|l| v.comps[l].conj().scale_rational(space.weight(l)))
                .collect()
        })
        .collect();
    let mut p = MatRF::zero(space);
    for j in 0..n {
        for l in 0..n {
            let mut acc = RationalFunction::zero();
            for b in 0..k {
                let (x, y) = (&u[j][b], &vdag[b][l]);
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul(y));
                }
            }
            p.entries[j * n + l] = acc;
        }
    }
    Ok(p)
}
