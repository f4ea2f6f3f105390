//! Heisenberg groups over `Z_p`, their irreducible representations, and exact
//! random-walk analysis.
//!
//! `H(n)` is the group of unipotent upper-triangular 3x3 matrices over
//! `Z_n`, written as triples `(x, y, z)` with product
//! `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')`. `H(p,d)` is the
//! `(d+2)x(d+2)` analogue with `x, y` in `Z_p^d` and the dot product in the
//! `z` accumulation. Walk distributions are computed by exact dense
//! convolution over the whole group, so total-variation numbers carry no
//! sampling noise; the Fourier machinery provides the standard
//! representation-theoretic upper bound on the same quantity.

use crate::linalg::{Complex, ComplexMatrix};
use crate::twisted::{root_table, Modulus, TwistedCirculant};
use crate::{Error, Result};

/// Full-spectrum Fourier bounds enumerate all irreps; guarded to `n <= 13`.
pub const FOURIER_BOUND_LIMIT: u64 = 13;

/// Walks on `H(p,d)` are guarded to group order `p^{2d+1} <= 3125`.
pub const HD_ORDER_LIMIT: u64 = 3125;

/// Principal-series representations of `H(p,d)` are guarded to dimension
/// `p^d <= 3125`.
pub const HD_DIM_LIMIT: u64 = 3125;

/// A finite group with a canonical element enumeration.
pub trait Group {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn order(&self) -> usize;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Bijection onto `{0, ..., order-1}`, lexicographic in `(x, y, z)`.
    fn index_of(&self, a: &Self::Elem) -> usize;
    fn element(&self, index: usize) -> Self::Elem;
}

/// Element of `H(n)`, components reduced mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeisenbergElement {
    modulus: Modulus,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl HeisenbergElement {
    pub fn new(n: Modulus, x: i64, y: i64, z: i64) -> Self {
        Self {
            modulus: n,
            x: n.reduce(x),
            y: n.reduce(y),
            z: n.reduce(z),
        }
    }

    pub fn identity(n: Modulus) -> Self {
        Self::new(n, 0, 0, 0)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Group law from multiplying the upper-triangular matrix forms: the
    /// z component accumulates `x * y'`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let n = self.modulus;
        if n != rhs.modulus {
            return Err(Error::ModulusMismatch {
                left: n.value(),
                right: rhs.modulus.value(),
            });
        }
        Ok(Self {
            modulus: n,
            x: n.add(self.x, rhs.x),
            y: n.add(self.y, rhs.y),
            z: n.add(n.add(self.z, rhs.z), n.mul(self.x, rhs.y)),
        })
    }

    /// `(x, y, z)^{-1} = (-x, -y, xy - z)`.
    pub fn inv(&self) -> Self {
        let n = self.modulus;
        Self {
            modulus: n,
            x: n.neg(self.x),
            y: n.neg(self.y),
            z: n.add(n.mul(self.x, self.y), n.neg(self.z)),
        }
    }
}

/// The group `H(n)` of order n^3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Heisenberg {
    modulus: Modulus,
}

impl Heisenberg {
    pub fn new(modulus: Modulus) -> Self {
        Self { modulus }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
}

impl Group for Heisenberg {
    type Elem = HeisenbergElement;

    fn order(&self) -> usize {
        self.modulus.size().pow(3)
    }

    fn identity(&self) -> HeisenbergElement {
        HeisenbergElement::identity(self.modulus)
    }

    fn mul(&self, a: &HeisenbergElement, b: &HeisenbergElement) -> HeisenbergElement {
        a.mul(b).expect("elements of the same group")
    }

    fn inv(&self, a: &HeisenbergElement) -> HeisenbergElement {
        a.inv()
    }

    fn index_of(&self, a: &HeisenbergElement) -> usize {
        let n = self.modulus.value();
        ((a.x * n + a.y) * n + a.z) as usize
    }

    fn element(&self, index: usize) -> HeisenbergElement {
        let n = self.modulus.value();
        let idx = index as u64;
        HeisenbergElement {
            modulus: self.modulus,
            x: idx / (n * n),
            y: (idx / n) % n,
            z: idx % n,
        }
    }
}

/// Element of `H(p,d)`: `x, y` in `Z_p^d`, `z` in `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HdElement {
    modulus: Modulus,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub z: u64,
}

impl HdElement {
    pub fn new(p: Modulus, x: Vec<i64>, y: Vec<i64>, z: i64) -> Self {
        assert_eq!(x.len(), y.len(), "x and y must have the same dimension");
        Self {
            modulus: p,
            x: x.into_iter().map(|v| p.reduce(v)).collect(),
            y: y.into_iter().map(|v| p.reduce(v)).collect(),
            z: p.reduce(z),
        }
    }

    pub fn identity(p: Modulus, d: usize) -> Self {
        Self {
            modulus: p,
            x: vec![0; d],
            y: vec![0; d],
            z: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    fn dot(&self, p: Modulus, other_y: &[u64]) -> u64 {
        self.x
            .iter()
            .zip(other_y)
            .fold(0, |acc, (&a, &b)| p.add(acc, p.mul(a, b)))
    }

    /// Group law with the dot product in the z accumulation.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let p = self.modulus;
        if p != rhs.modulus || self.dim() != rhs.dim() {
            return Err(Error::ModulusMismatch {
                left: p.value(),
                right: rhs.modulus.value(),
            });
        }
        Ok(Self {
            modulus: p,
            x: self
                .x
                .iter()
                .zip(&rhs.x)
                .map(|(&a, &b)| p.add(a, b))
                .collect(),
            y: self
                .y
                .iter()
                .zip(&rhs.y)
                .map(|(&a, &b)| p.add(a, b))
                .collect(),
            z: p.add(p.add(self.z, rhs.z), self.dot(p, &rhs.y)),
        })
    }

    pub fn inv(&self) -> Self {
        let p = self.modulus;
        Self {
            modulus: p,
            x: self.x.iter().map(|&v| p.neg(v)).collect(),
            y: self.y.iter().map(|&v| p.neg(v)).collect(),
            z: p.add(self.dot(p, &self.y), p.neg(self.z)),
        }
    }
}

/// The group `H(p,d)` of order `p^{2d+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeisenbergHd {
    modulus: Modulus,
    dim: usize,
}

impl HeisenbergHd {
    pub fn new(p: Modulus, d: usize) -> Result<Self> {
        assert!(d >= 1, "dimension must be at least 1");
        let order = (p.value() as u128).pow(2 * d as u32 + 1);
        if order > HD_ORDER_LIMIT as u128 {
            return Err(Error::ResourceGuard {
                size: order as u64,
                limit: HD_ORDER_LIMIT,
            });
        }
        Ok(Self { modulus: p, dim: d })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The i-th standard basis vector of `Z_p^d` as the x component:
    /// `e_i = (w_i, 0, 0)`.
    pub fn e(&self, i: usize) -> HdElement {
        let mut g = HdElement::identity(self.modulus, self.dim);
        g.x[i] = 1;
        g
    }

    /// `f_i = (0, w_i, 0)`.
    pub fn f(&self, i: usize) -> HdElement {
        let mut g = HdElement::identity(self.modulus, self.dim);
        g.y[i] = 1;
        g
    }
}

impl Group for HeisenbergHd {
    type Elem = HdElement;

    fn order(&self) -> usize {
        self.modulus.size().pow(2 * self.dim as u32 + 1)
    }

    fn identity(&self) -> HdElement {
        HdElement::identity(self.modulus, self.dim)
    }

    fn mul(&self, a: &HdElement, b: &HdElement) -> HdElement {
        a.mul(b).expect("elements of the same group")
    }

    fn inv(&self, a: &HdElement) -> HdElement {
        a.inv()
    }

    fn index_of(&self, a: &HdElement) -> usize {
        let p = self.modulus.value();
        let mut idx = 0u64;
        for &c in a.x.iter().chain(a.y.iter()) {
            idx = idx * p + c;
        }
        (idx * p + a.z) as usize
    }

    fn element(&self, index: usize) -> HdElement {
        let p = self.modulus.value();
        let mut idx = index as u64;
        let z = idx % p;
        idx /= p;
        let mut digits = vec![0u64; 2 * self.dim];
        for slot in digits.iter_mut().rev() {
            *slot = idx % p;
            idx /= p;
        }
        let y = digits.split_off(self.dim);
        HdElement {
            modulus: self.modulus,
            x: digits,
            y,
            z,
        }
    }
}

/// `G` generates `H(n)` for the standard two-pair step set iff
/// `r1 s2 != r2 s1 mod n`.
pub fn generating_check(n: Modulus, r1: u64, s1: u64, r2: u64, s2: u64) -> bool {
    n.mul(r1, s2) != n.mul(r2, s1)
}

/// A symmetric step distribution on a finite group.
#[derive(Debug, Clone)]
pub struct GeneratorSet<G: Group> {
    steps: Vec<(G::Elem, f64)>,
}

impl<G: Group> GeneratorSet<G> {
    /// Uniform distribution on the given step list; the multiset must be
    /// closed under inversion.
    pub fn uniform(group: &G, elems: Vec<G::Elem>) -> Result<Self> {
        assert!(!elems.is_empty(), "generator set must be nonempty");
        for e in &elems {
            let inv = group.inv(e);
            let direct = elems.iter().filter(|g| **g == *e).count();
            let inverse = elems.iter().filter(|g| **g == inv).count();
            if direct != inverse {
                return Err(Error::NotSymmetric);
            }
        }
        let p = 1.0 / elems.len() as f64;
        Ok(Self {
            steps: elems.into_iter().map(|e| (e, p)).collect(),
        })
    }

    pub fn steps(&self) -> &[(G::Elem, f64)] {
        &self.steps
    }
}

/// The walk steps `{(s1,r1,0)^{+-1}, (s2,r2,0)^{+-1}}` on `H(n)`, uniform.
/// Tuples are in `(s, r)` order: the first coordinate is the x (shift)
/// component. Inverses are the true group inverses, which carry
/// `z = s*r` when both components are nonzero.
pub fn standard_pair_set(
    group: &Heisenberg,
    (s1, r1): (u64, u64),
    (s2, r2): (u64, u64),
) -> Result<GeneratorSet<Heisenberg>> {
    let n = group.modulus();
    let g1 = HeisenbergElement::new(n, s1 as i64, r1 as i64, 0);
    let g2 = HeisenbergElement::new(n, s2 as i64, r2 as i64, 0);
    GeneratorSet::uniform(group, vec![g1, g1.inv(), g2, g2.inv()])
}

/// The size-4d standard step set `{+-e_i, +-f_i}` on `H(p,d)`, uniform.
pub fn standard_hd_set(group: &HeisenbergHd) -> GeneratorSet<HeisenbergHd> {
    let mut elems = Vec::with_capacity(4 * group.dim());
    for i in 0..group.dim() {
        let e = group.e(i);
        let f = group.f(i);
        elems.push(e.clone());
        elems.push(e.inv());
        elems.push(f.clone());
        elems.push(f.inv());
    }
    GeneratorSet::uniform(group, elems).expect("standard set is symmetric")
}

/// Exact distribution over the group after some number of steps.
#[derive(Debug, Clone)]
pub struct GroupDistribution {
    probs: Vec<f64>,
}

impl GroupDistribution {
    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn sum(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Total-variation distance to the uniform distribution.
    pub fn tv_uniform(&self) -> f64 {
        let u = 1.0 / self.probs.len() as f64;
        0.5 * self.probs.iter().map(|p| (p - u).abs()).sum::<f64>()
    }
}

struct WalkState {
    current: Vec<f64>,
    scratch: Vec<f64>,
    tables: Vec<(Vec<usize>, f64)>,
}

impl WalkState {
    fn new<G: Group>(group: &G, gens: &GeneratorSet<G>) -> Self {
        let order = group.order();
        let tables = gens
            .steps()
            .iter()
            .map(|(step, p)| {
                let table: Vec<usize> = (0..order)
                    .map(|i| group.index_of(&group.mul(&group.element(i), step)))
                    .collect();
                (table, *p)
            })
            .collect();
        let mut current = vec![0.0; order];
        current[group.index_of(&group.identity())] = 1.0;
        Self {
            current,
            scratch: vec![0.0; order],
            tables,
        }
    }

    fn step(&mut self) {
        self.scratch.fill(0.0);
        for (table, p) in &self.tables {
            for (i, &target) in table.iter().enumerate() {
                self.scratch[target] += self.current[i] * p;
            }
        }
        std::mem::swap(&mut self.current, &mut self.scratch);
    }

    fn tv_uniform(&self) -> f64 {
        let u = 1.0 / self.current.len() as f64;
        0.5 * self.current.iter().map(|p| (p - u).abs()).sum::<f64>()
    }
}

/// Exact walk distribution after `k` steps from the identity.
pub fn walk_distribution<G: Group>(
    group: &G,
    gens: &GeneratorSet<G>,
    k: usize,
) -> GroupDistribution {
    let mut state = WalkState::new(group, gens);
    for _ in 0..k {
        state.step();
    }
    GroupDistribution {
        probs: state.current,
    }
}

/// Total-variation distance to uniform at every step `k = 0, ..., max_k`.
pub fn tv_curve<G: Group>(group: &G, gens: &GeneratorSet<G>, max_k: usize) -> Vec<f64> {
    let mut state = WalkState::new(group, gens);
    let mut out = Vec::with_capacity(max_k + 1);
    out.push(state.tv_uniform());
    for _ in 0..max_k {
        state.step();
        out.push(state.tv_uniform());
    }
    out
}

/// Least `k <= max_steps` with TV distance at most `eps`, checking every `k`;
/// `None` when the walk saturates `max_steps` without reaching `eps`.
pub fn mixing_time<G: Group>(
    group: &G,
    gens: &GeneratorSet<G>,
    eps: f64,
    max_steps: usize,
) -> Result<Option<usize>> {
    if !(0.0..1.0).contains(&eps) || eps == 0.0 {
        return Err(Error::EpsilonOutOfRange { value: eps });
    }
    let mut state = WalkState::new(group, gens);
    for k in 0..=max_steps {
        if state.tv_uniform() <= eps {
            return Ok(Some(k));
        }
        state.step();
    }
    Ok(None)
}

/// One-dimensional character `chi_{a,b}(x,y,z) = omega^{ax + by}` of `H(n)`.
pub fn char_1d(n: Modulus, a: u64, b: u64, g: &HeisenbergElement) -> Complex {
    let table = root_table(n);
    table[n.add(n.mul(a, g.x), n.mul(b, g.y)) as usize]
}

/// Principal-series representation of `H(n)`:
/// `rho_c(x,y,z) = omega^{cz} R^{cy} S^x`, an n x n unitary. Requires
/// `c != 0 mod n`.
pub fn rho_principal(n: Modulus, c: u64, g: &HeisenbergElement) -> Result<ComplexMatrix> {
    if c % n.value() == 0 {
        return Err(Error::ZeroCentralCharacter);
    }
    Ok(TwistedCirculant::with_phase(
        n,
        n.mul(c, g.z) as i64,
        n.mul(c, g.y) as i64,
        g.x as i64,
    )
    .to_matrix())
}

/// One-dimensional character of `H(p,d)`: `q^{a.x + b.y}`.
pub fn char_hd(p: Modulus, a: &[u64], b: &[u64], g: &HdElement) -> Complex {
    let table = root_table(p);
    let mut e = 0u64;
    for (coef, comp) in a.iter().zip(&g.x) {
        e = p.add(e, p.mul(*coef, *comp));
    }
    for (coef, comp) in b.iter().zip(&g.y) {
        e = p.add(e, p.mul(*coef, *comp));
    }
    table[e as usize]
}

/// Function-space form of the principal-series representation of `H(p,d)`
/// on functions `Z_p^d -> C`: `[rho_c(x,y,z) f](w) = q^{c(y.w + z)} f(w+x)`,
/// with basis vectors `e_w` ordered lexicographically in `(w_1, ..., w_d)`.
pub fn rho_hd_function_space(
    p: Modulus,
    d: usize,
    c: u64,
    g: &HdElement,
) -> Result<ComplexMatrix> {
    check_hd_rep_args(p, d, c, g)?;
    let dim = p.size().pow(d as u32);
    let table = root_table(p);
    let mut m = ComplexMatrix::zeros(dim, dim);
    let mut w = vec![0u64; d];
    for row in 0..dim {
        // exponent c (y . w + z)
        let mut e = g.z;
        for (yc, &wc) in g.y.iter().zip(&w) {
            e = p.add(e, p.mul(*yc, wc));
        }
        let phase = table[p.mul(c, e) as usize];
        // column index of w + x
        let mut col = 0usize;
        for (xc, &wc) in g.x.iter().zip(&w) {
            col = col * p.size() + p.add(wc, *xc) as usize;
        }
        m.set(row, col, phase);
        // advance w lexicographically
        for slot in (0..d).rev() {
            w[slot] += 1;
            if w[slot] < p.value() {
                break;
            }
            w[slot] = 0;
        }
    }
    Ok(m)
}

/// Tensor form of the same representation:
/// `q^{cz} [R^{c y_1} S^{x_1} (x) ... (x) R^{c y_d} S^{x_d}]`.
pub fn rho_hd_tensor(p: Modulus, d: usize, c: u64, g: &HdElement) -> Result<ComplexMatrix> {
    check_hd_rep_args(p, d, c, g)?;
    let table = root_table(p);
    let mut acc = ComplexMatrix::identity(1);
    for i in 0..d {
        let factor =
            TwistedCirculant::with_phase(p, 0, p.mul(c, g.y[i]) as i64, g.x[i] as i64).to_matrix();
        acc = acc.kron(&factor);
    }
    Ok(acc.scale(table[p.mul(c, g.z) as usize]))
}

fn check_hd_rep_args(p: Modulus, d: usize, c: u64, g: &HdElement) -> Result<()> {
    if c % p.value() == 0 {
        return Err(Error::ZeroCentralCharacter);
    }
    let dim = (p.value() as u128).pow(d as u32);
    if dim > HD_DIM_LIMIT as u128 {
        return Err(Error::ResourceGuard {
            size: dim as u64,
            limit: HD_DIM_LIMIT,
        });
    }
    assert_eq!(g.dim(), d, "element dimension must match d");
    Ok(())
}

/// Builds the principal-series matrix both ways (function-space and tensor)
/// and checks entrywise agreement at 1e-12 before returning it.
pub fn rho_hd(p: Modulus, d: usize, c: u64, g: &HdElement) -> Result<ComplexMatrix> {
    let direct = rho_hd_function_space(p, d, c, g)?;
    let tensored = rho_hd_tensor(p, d, c, g)?;
    let dev = direct.max_abs_diff(&tensored);
    if dev > 1e-12 {
        return Err(Error::ConstructionMismatch { residual: dev });
    }
    Ok(direct)
}

/// Irreducible representations of `H(n)`: n^2 characters and n-1
/// principal-series representations of dimension n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    Character { a: u64, b: u64 },
    Principal { c: u64 },
}

impl Representation {
    pub fn dim(&self, n: Modulus) -> usize {
        match self {
            Representation::Character { .. } => 1,
            Representation::Principal { .. } => n.size(),
        }
    }
}

/// The complete list of irreps of `H(n)`; dimensions satisfy
/// `sum d^2 = n^3`.
pub fn irreps(n: Modulus) -> Vec<Representation> {
    let mut out = Vec::with_capacity((n.value() * n.value() + n.value() - 1) as usize);
    for a in 0..n.value() {
        for b in 0..n.value() {
            out.push(Representation::Character { a, b });
        }
    }
    for c in 1..n.value() {
        out.push(Representation::Principal { c });
    }
    out
}

/// Evaluates an irrep of `H(n)` as a dense matrix (1x1 for characters).
pub fn evaluate_rep(
    n: Modulus,
    rep: &Representation,
    g: &HeisenbergElement,
) -> Result<ComplexMatrix> {
    match rep {
        Representation::Character { a, b } => Ok(ComplexMatrix::new(
            1,
            1,
            vec![char_1d(n, *a, *b, g)],
        )),
        Representation::Principal { c } => rho_principal(n, *c, g),
    }
}

/// Fourier coefficient of the step distribution at an irrep of `H(n)`:
/// `sum_s p(s) rho(s)`. Hermitian for symmetric step sets.
pub fn fourier_at_rep(
    n: Modulus,
    gens: &GeneratorSet<Heisenberg>,
    rep: &Representation,
) -> Result<ComplexMatrix> {
    let dim = rep.dim(n);
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for (step, p) in gens.steps() {
        acc = acc.add(&evaluate_rep(n, rep, step)?.scale(Complex::new(*p, 0.0)))?;
    }
    Ok(acc)
}

/// Precomputed spectral data for the Fourier upper bound
/// `4 TV(k)^2 <= sum_{rho != triv} d_rho Tr(rho_hat^k (rho_hat^*)^k)`,
/// evaluated through eigenvalues since symmetric step sets make every
/// `rho_hat` Hermitian.
#[derive(Debug, Clone)]
pub struct FourierBound {
    /// `|chi_hat|` for each nontrivial character.
    character_coeffs: Vec<f64>,
    /// `(dim, eigenvalues)` per higher-dimensional irrep.
    principal_eigs: Vec<(usize, Vec<f64>)>,
}

impl FourierBound {
    /// All nontrivial irreps of `H(n)`; guarded to `n <= 13`.
    pub fn heisenberg(group: &Heisenberg, gens: &GeneratorSet<Heisenberg>) -> Result<Self> {
        let n = group.modulus();
        if n.value() > FOURIER_BOUND_LIMIT {
            return Err(Error::ResourceGuard {
                size: n.value(),
                limit: FOURIER_BOUND_LIMIT,
            });
        }
        let mut character_coeffs = Vec::new();
        let mut principal_eigs = Vec::new();
        for rep in irreps(n) {
            match rep {
                Representation::Character { a: 0, b: 0 } => {}
                Representation::Character { .. } => {
                    let m = fourier_at_rep(n, gens, &rep)?;
                    character_coeffs.push(m.get(0, 0).norm());
                }
                Representation::Principal { .. } => {
                    let m = fourier_at_rep(n, gens, &rep)?;
                    let eig = m.hermitian_eigen_default()?;
                    principal_eigs.push((n.size(), eig.eigenvalues));
                }
            }
        }
        Ok(Self {
            character_coeffs,
            principal_eigs,
        })
    }

    /// All nontrivial irreps of `H(p,d)`, within the resource guards.
    pub fn heisenberg_hd(
        group: &HeisenbergHd,
        gens: &GeneratorSet<HeisenbergHd>,
    ) -> Result<Self> {
        let p = group.modulus();
        let d = group.dim();
        let mut character_coeffs = Vec::new();
        let mut coeffs = vec![0u64; 2 * d];
        let total = p.value().pow(2 * d as u32);
        for flat in 0..total {
            let mut idx = flat;
            for slot in coeffs.iter_mut().rev() {
                *slot = idx % p.value();
                idx /= p.value();
            }
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let (a, b) = coeffs.split_at(d);
            let mut acc = Complex::ZERO;
            for (step, prob) in gens.steps() {
                acc += char_hd(p, a, b, step) * *prob;
            }
            character_coeffs.push(acc.norm());
        }
        let mut principal_eigs = Vec::new();
        let dim = p.size().pow(d as u32);
        for c in 1..p.value() {
            let mut acc = ComplexMatrix::zeros(dim, dim);
            for (step, prob) in gens.steps() {
                acc = acc.add(&rho_hd(p, d, c, step)?.scale(Complex::new(*prob, 0.0)))?;
            }
            let eig = acc.hermitian_eigen_default()?;
            principal_eigs.push((dim, eig.eigenvalues));
        }
        Ok(Self {
            character_coeffs,
            principal_eigs,
        })
    }

    /// The bound at step `k`.
    pub fn at(&self, k: usize) -> f64 {
        let mut sum = 0.0;
        for coeff in &self.character_coeffs {
            sum += coeff.powi(2 * k as i32);
        }
        for (dim, eigs) in &self.principal_eigs {
            let tr: f64 = eigs.iter().map(|l| l.abs().powi(2 * k as i32)).sum();
            sum += *dim as f64 * tr;
        }
        0.5 * sum.sqrt()
    }
}

/// The Fourier upper bound on TV distance at step `k` for `H(n)`.
pub fn fourier_tv_bound(
    group: &Heisenberg,
    gens: &GeneratorSet<Heisenberg>,
    k: usize,
) -> Result<f64> {
    Ok(FourierBound::heisenberg(group, gens)?.at(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{weighted_sum, SumSpec, SumTerm};
    use crate::twisted::hermitian_twisted;

    fn modulus(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn h(n: u64) -> Heisenberg {
        Heisenberg::new(modulus(n))
    }

    /// Oracle: multiply the 3x3 unipotent integer matrices mod n.
    fn matrix_mul_oracle(
        n: u64,
        a: (u64, u64, u64),
        b: (u64, u64, u64),
    ) -> (u64, u64, u64) {
        // [[1, x, z], [0, 1, y], [0, 0, 1]]
        let to_mat = |(x, y, z): (u64, u64, u64)| [[1, x, z], [0, 1, y], [0, 0, 1]];
        let (ma, mb) = (to_mat(a), to_mat(b));
        let mut out = [[0u64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0u64;
                for k in 0..3 {
                    acc = (acc + ma[i][k] * mb[k][j]) % n;
                }
                out[i][j] = acc;
            }
        }
        (out[0][1], out[1][2], out[0][2])
    }

    #[test]
    fn group_law_matches_matrix_multiplication_exhaustively() {
        let g = h(3);
        for i in 0..27 {
            for j in 0..27 {
                let a = g.element(i);
                let b = g.element(j);
                let got = g.mul(&a, &b);
                let want = matrix_mul_oracle(3, (a.x, a.y, a.z), (b.x, b.y, b.z));
                assert_eq!((got.x, got.y, got.z), want);
            }
        }
    }

    #[test]
    fn generator_product_and_commutator() {
        for n in [3u64, 5, 11] {
            let m = modulus(n);
            let x = HeisenbergElement::new(m, 1, 0, 0);
            let y = HeisenbergElement::new(m, 0, 1, 0);
            let xy = x.mul(&y).unwrap();
            assert_eq!((xy.x, xy.y, xy.z), (1, 1, 1));
            let comm = xy.mul(&x.inv()).unwrap().mul(&y.inv()).unwrap();
            assert_eq!((comm.x, comm.y, comm.z), (0, 0, 1));
        }
    }

    #[test]
    fn inverse_axioms() {
        let g = h(7);
        let m = modulus(7);
        assert_eq!(HeisenbergElement::identity(m).inv(), HeisenbergElement::identity(m));
        let gen = HeisenbergElement::new(m, 1, 0, 0);
        assert_eq!((gen.inv().x, gen.inv().y, gen.inv().z), (6, 0, 0));
        let mut seed = 42u64;
        for _ in 0..200 {
            seed = crate::derive_seed(seed, &[1]);
            let e = g.element((seed % 343) as usize);
            let prod = e.mul(&e.inv()).unwrap();
            assert_eq!(prod, g.identity());
        }
    }

    #[test]
    fn associativity_on_seeded_triples() {
        let g = h(5);
        let hd = HeisenbergHd::new(modulus(3), 2).unwrap();
        let mut seed = 0u64;
        for _ in 0..1000 {
            seed = crate::derive_seed(seed, &[3]);
            let a = g.element((seed % 125) as usize);
            let b = g.element(((seed >> 8) % 125) as usize);
            let c = g.element(((seed >> 16) % 125) as usize);
            let lhs = g.mul(&g.mul(&a, &b), &c);
            let rhs = g.mul(&a, &g.mul(&b, &c));
            assert_eq!(lhs, rhs);

            let a = hd.element((seed % 243) as usize);
            let b = hd.element(((seed >> 8) % 243) as usize);
            let c = hd.element(((seed >> 16) % 243) as usize);
            let lhs = hd.mul(&hd.mul(&a, &b), &c);
            let rhs = hd.mul(&a, &hd.mul(&b, &c));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn order_and_center() {
        for n in [3u64, 5] {
            let g = h(n);
            assert_eq!(g.order() as u64, n * n * n);
            // Center: elements commuting with the generators X and Y.
            let m = modulus(n);
            let x = HeisenbergElement::new(m, 1, 0, 0);
            let y = HeisenbergElement::new(m, 0, 1, 0);
            let mut center = Vec::new();
            for i in 0..g.order() {
                let e = g.element(i);
                if g.mul(&e, &x) == g.mul(&x, &e) && g.mul(&e, &y) == g.mul(&y, &e) {
                    center.push(e);
                }
            }
            assert_eq!(center.len() as u64, n);
            assert!(center.iter().all(|e| e.x == 0 && e.y == 0));
        }
    }

    #[test]
    fn element_index_round_trip() {
        let g = h(5);
        assert_eq!(g.index_of(&g.identity()), 0);
        let g3 = h(3);
        let m = modulus(3);
        assert_eq!(g3.index_of(&HeisenbergElement::new(m, 0, 0, 1)), 1);
        assert_eq!(g3.index_of(&HeisenbergElement::new(m, 0, 1, 0)), 3);
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.element(i)), i);
        }
        let hd = HeisenbergHd::new(modulus(3), 2).unwrap();
        for i in 0..hd.order() {
            assert_eq!(hd.index_of(&hd.element(i)), i);
        }
    }

    #[test]
    fn hd_reduces_to_h_at_d1() {
        let g = h(3);
        let hd = HeisenbergHd::new(modulus(3), 1).unwrap();
        for i in 0..27 {
            for j in 0..27 {
                let a = g.element(i);
                let b = g.element(j);
                let ah = hd.element(i);
                let bh = hd.element(j);
                let got = hd.mul(&ah, &bh);
                let want = g.mul(&a, &b);
                assert_eq!((got.x[0], got.y[0], got.z), (want.x, want.y, want.z));
            }
        }
    }

    #[test]
    fn hd_commutator_reaches_center() {
        // e_i f_i e_i^{-1} f_i^{-1} = (0, 0, 1), via the (d+2)x(d+2) matrix oracle.
        let p = 3u64;
        let hd = HeisenbergHd::new(modulus(p), 2).unwrap();
        for i in 0..2 {
            let e = hd.e(i);
            let f = hd.f(i);
            let ef = hd.mul(&e, &f);
            assert_eq!(ef.z, 1, "commutator accumulates the center");
            let comm = hd.mul(&hd.mul(&ef, &hd.inv(&e)), &hd.inv(&f));
            assert_eq!(comm, HdElement::new(modulus(p), vec![0, 0], vec![0, 0], 1));
        }
        // Matrix oracle for d=2: 4x4 upper unitriangular with top row x and
        // right column y.
        let mat = |g: &HdElement| -> [[u64; 4]; 4] {
            [
                [1, g.x[0], g.x[1], g.z],
                [0, 1, 0, g.y[0]],
                [0, 0, 1, g.y[1]],
                [0, 0, 0, 1],
            ]
        };
        let mut seed = 9u64;
        for _ in 0..200 {
            seed = crate::derive_seed(seed, &[2]);
            let a = hd.element((seed % 243) as usize);
            let b = hd.element(((seed >> 10) % 243) as usize);
            let (ma, mb) = (mat(&a), mat(&b));
            let mut out = [[0u64; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = 0;
                    for k in 0..4 {
                        acc = (acc + ma[i][k] * mb[k][j]) % p;
                    }
                    out[i][j] = acc;
                }
            }
            let got = hd.mul(&a, &b);
            assert_eq!(mat(&got), out);
        }
    }

    #[test]
    fn hd_resource_guard() {
        assert!(matches!(
            HeisenbergHd::new(modulus(5), 3),
            Err(Error::ResourceGuard { .. })
        ));
        assert!(HeisenbergHd::new(modulus(5), 2).is_ok());
    }

    #[test]
    fn generator_set_symmetry_validation() {
        let g = h(5);
        let m = modulus(5);
        let asym = vec![HeisenbergElement::new(m, 1, 1, 0)];
        assert!(matches!(
            GeneratorSet::uniform(&g, asym),
            Err(Error::NotSymmetric)
        ));
        // The skew standard pair is symmetric because true inverses are used.
        assert!(standard_pair_set(&g, (1, 1), (1, 2)).is_ok());
    }

    #[test]
    fn walk_distribution_small_steps() {
        let g = h(3);
        let gens = standard_pair_set(&g, (1, 0), (0, 1)).unwrap();
        let d0 = walk_distribution(&g, &gens, 0);
        assert_eq!(d0.probabilities()[0], 1.0);
        assert!((d0.tv_uniform() - (1.0 - 1.0 / 27.0)).abs() < 1e-15);

        let d1 = walk_distribution(&g, &gens, 1);
        for (step, _) in gens.steps() {
            assert!((d1.probabilities()[g.index_of(step)] - 0.25).abs() < 1e-15);
        }
        assert!((d1.sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_step_walk_matches_path_enumeration() {
        // Oracle: enumerate the 16 ordered two-step products directly.
        let g = h(3);
        let gens = standard_pair_set(&g, (1, 0), (0, 1)).unwrap();
        let mut oracle = vec![0.0f64; g.order()];
        for (a, _) in gens.steps() {
            for (b, _) in gens.steps() {
                oracle[g.index_of(&g.mul(a, b))] += 1.0 / 16.0;
            }
        }
        let got = walk_distribution(&g, &gens, 2);
        for (i, (&o, &w)) in oracle.iter().zip(got.probabilities()).enumerate() {
            assert!((o - w).abs() < 1e-15, "index {i}: {o} vs {w}");
        }
        // All probabilities are multiples of 1/16.
        for &p in got.probabilities() {
            let sixteenths = p * 16.0;
            assert!((sixteenths - sixteenths.round()).abs() < 1e-12);
        }
        // Independent TV summation.
        let u = 1.0 / 27.0;
        let tv: f64 = 0.5 * oracle.iter().map(|p| (p - u).abs()).sum::<f64>();
        assert!((got.tv_uniform() - tv).abs() < 1e-15);
    }

    #[test]
    fn walk_probabilities_stay_normalized_after_many_steps() {
        let g = h(3);
        let gens = standard_pair_set(&g, (1, 0), (0, 1)).unwrap();
        let d = walk_distribution(&g, &gens, 10_000);
        assert!((d.sum() - 1.0).abs() < 1e-10);
        assert!(d.probabilities().iter().all(|&p| p >= -1e-15));
        assert!(d.tv_uniform() < 1e-10);
    }

    #[test]
    fn mixing_time_basics() {
        let g = h(5);
        let gens = standard_pair_set(&g, (1, 0), (0, 1)).unwrap();
        let k = mixing_time(&g, &gens, 0.25, 10_000).unwrap();
        assert!(k.is_some());
        // Point mass already satisfies a large epsilon.
        let k0 = mixing_time(&g, &gens, 0.995, 10).unwrap();
        assert_eq!(k0, Some(0));
        // Saturation flag.
        let sat = mixing_time(&g, &gens, 0.01, 1).unwrap();
        assert_eq!(sat, None);
        assert!(matches!(
            mixing_time(&g, &gens, 0.0, 10),
            Err(Error::EpsilonOutOfRange { .. })
        ));
    }

    #[test]
    fn quadratic_scaling_window() {
        let k5 = mixing_time(&h(5), &standard_pair_set(&h(5), (1, 0), (0, 1)).unwrap(), 0.25, 100_000)
            .unwrap()
            .unwrap();
        let k11 = mixing_time(&h(11), &standard_pair_set(&h(11), (1, 0), (0, 1)).unwrap(), 0.25, 100_000)
            .unwrap()
            .unwrap();
        let ratio = k11 as f64 / k5 as f64;
        let scale = (11.0f64 / 5.0).powi(2);
        assert!(ratio >= 0.5 * scale && ratio <= 2.0 * scale, "ratio {ratio}");
    }

    #[test]
    fn char_1d_homomorphism_and_trivial() {
        let m = modulus(7);
        let g = h(7);
        let mut seed = 7u64;
        for _ in 0..500 {
            seed = crate::derive_seed(seed, &[4]);
            let a = g.element((seed % 343) as usize);
            let b = g.element(((seed >> 9) % 343) as usize);
            assert_eq!(char_1d(m, 0, 0, &a), Complex::ONE);
            let lhs = char_1d(m, 2, 3, &g.mul(&a, &b));
            let rhs = char_1d(m, 2, 3, &a) * char_1d(m, 2, 3, &b);
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn char_1d_max_coefficient_by_exhaustive_sweep() {
        // The slowest nontrivial character coefficient of the standard walk,
        // found by sweeping all (a,b) != (0,0), is cos(pi/n) in magnitude,
        // attained on the negative side at a = b = (n+-1)/2.
        let n = 11u64;
        let g = h(n);
        let m = modulus(n);
        let gens = standard_pair_set(&g, (1, 0), (0, 1)).unwrap();
        let mut max = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                if a == 0 && b == 0 {
                    continue;
                }
                let mut acc = Complex::ZERO;
                for (step, p) in gens.steps() {
                    acc += char_1d(m, a, b, step) * *p;
                }
                max = max.max(acc.norm());
            }
        }
        let want = (std::f64::consts::PI / n as f64).cos();
        assert!((max - want).abs() < 1e-12, "max {max} vs cos(pi/n) {want}");
        // Sanity: this exceeds the positive-side maximum (1 + cos(2pi/n))/2.
        assert!(max > 0.5 * (1.0 + (2.0 * std::f64::consts::PI / n as f64).cos()));
    }

    #[test]
    fn rho_principal_formulas() {
        let m = modulus(5);
        // Central element maps to the scalar q^c.
        let center = HeisenbergElement::new(m, 0, 0, 1);
        for c in 1..5u64 {
            let got = rho_principal(m, c, &center).unwrap();
            let want = ComplexMatrix::identity(5).scale(root_table(m)[c as usize]);
            assert!(got.max_abs_diff(&want) < 1e-15);
        }
        // (s, r, 0) maps to A(c r, s).
        for c in 1..5u64 {
            for s in 0..5u64 {
                for r in 0..5u64 {
                    let g = HeisenbergElement::new(m, s as i64, r as i64, 0);
                    let got = rho_principal(m, c, &g).unwrap();
                    let want = TwistedCirculant::new(m, m.mul(c, r) as i64, s as i64).to_matrix();
                    assert!(got.max_abs_diff(&want) < 1e-15);
                }
            }
        }
        assert!(matches!(
            rho_principal(m, 0, &center),
            Err(Error::ZeroCentralCharacter)
        ));
    }

    #[test]
    fn rho_principal_homomorphism() {
        let m = modulus(5);
        let g = h(5);
        let mut seed = 1u64;
        for _ in 0..500 {
            seed = crate::derive_seed(seed, &[5]);
            let a = g.element((seed % 125) as usize);
            let b = g.element(((seed >> 9) % 125) as usize);
            let lhs = rho_principal(m, 2, &g.mul(&a, &b)).unwrap();
            let rhs = rho_principal(m, 2, &a)
                .unwrap()
                .mul(&rho_principal(m, 2, &b).unwrap())
                .unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn rho_hd_reduces_and_tensors() {
        let p = modulus(3);
        let hd = HeisenbergHd::new(p, 1).unwrap();
        let g3 = h(3);
        for c in 1..3u64 {
            for i in 0..27 {
                let ghd = hd.element(i);
                let gh = g3.element(i);
                let got = rho_hd(p, 1, c, &ghd).unwrap();
                let want = rho_principal(p, c, &gh).unwrap();
                assert!(got.max_abs_diff(&want) < 1e-13);
            }
        }
        // e_i and f_i land on the tensor slots.
        let hd = HeisenbergHd::new(p, 2).unwrap();
        let shift = TwistedCirculant::new(p, 0, 1).to_matrix();
        let id3 = ComplexMatrix::identity(3);
        for c in 1..3u64 {
            let clock_c = TwistedCirculant::new(p, c as i64, 0).to_matrix();
            let got_e0 = rho_hd(p, 2, c, &hd.e(0)).unwrap();
            assert!(got_e0.max_abs_diff(&shift.kron(&id3)) < 1e-13);
            let got_e1 = rho_hd(p, 2, c, &hd.e(1)).unwrap();
            assert!(got_e1.max_abs_diff(&id3.kron(&shift)) < 1e-13);
            let got_f0 = rho_hd(p, 2, c, &hd.f(0)).unwrap();
            assert!(got_f0.max_abs_diff(&clock_c.kron(&id3)) < 1e-13);
            let got_f1 = rho_hd(p, 2, c, &hd.f(1)).unwrap();
            assert!(got_f1.max_abs_diff(&id3.kron(&clock_c)) < 1e-13);
        }
    }

    #[test]
    fn rho_hd_homomorphism_seeded() {
        let p = modulus(3);
        let hd = HeisenbergHd::new(p, 2).unwrap();
        let mut seed = 11u64;
        for _ in 0..100 {
            seed = crate::derive_seed(seed, &[6]);
            let a = hd.element((seed % 243) as usize);
            let b = hd.element(((seed >> 9) % 243) as usize);
            let lhs = rho_hd(p, 2, 1, &hd.mul(&a, &b)).unwrap();
            let rhs = rho_hd(p, 2, 1, &a)
                .unwrap()
                .mul(&rho_hd(p, 2, 1, &b).unwrap())
                .unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-11);
        }
    }

    #[test]
    fn representation_completeness() {
        for n in [3u64, 5, 7, 11] {
            let m = modulus(n);
            let total: usize = irreps(m).iter().map(|r| r.dim(m).pow(2)).sum();
            assert_eq!(total as u64, n * n * n);
        }
    }

    #[test]
    fn fourier_bridge_to_twisted_circulants() {
        // The standard pair set at rho_c is (M(c r1, s1) + M(c r2, s2))/2.
        for n in [5u64, 7] {
            let m = modulus(n);
            let g = h(n);
            for (s1, r1, s2, r2) in [(1u64, 0u64, 0u64, 1u64), (1, 1, 1, 2)] {
                let gens = standard_pair_set(&g, (s1, r1), (s2, r2)).unwrap();
                for c in 1..n {
                    let got =
                        fourier_at_rep(m, &gens, &Representation::Principal { c }).unwrap();
                    let want = weighted_sum(
                        &SumSpec::new(
                            m,
                            vec![
                                SumTerm { weight: 0.5, r: m.mul(c, r1), s: s1 },
                                SumTerm { weight: 0.5, r: m.mul(c, r2), s: s2 },
                            ],
                        )
                        .unwrap(),
                    );
                    assert!(
                        got.max_abs_diff(&want) < 1e-13,
                        "n={n} c={c} ({s1},{r1}),({s2},{r2})"
                    );
                }
            }
        }
    }

    #[test]
    fn fourier_at_xy_generators_gives_quarter_form() {
        // {X^{+-1}, Y^{+-1}} at rho_c is (S + S^{-1} + D(c))/4.
        let n = 7u64;
        let m = modulus(n);
        let g = h(n);
        let gens = standard_pair_set(&g, (1, 0), (0, 1)).unwrap();
        for c in 1..n {
            let got = fourier_at_rep(m, &gens, &Representation::Principal { c }).unwrap();
            let want = hermitian_twisted(m, c as i64, 0)
                .add(&hermitian_twisted(m, 0, 1))
                .unwrap()
                .scale(Complex::new(0.5, 0.0));
            assert!(got.max_abs_diff(&want) < 1e-14);
        }
    }

    #[test]
    fn hd_fixed_slice_average_is_tensored_pair() {
        // For fixed i, the average over {+-e_i, +-f_i} is
        // (M(0,1)/2 + M(c,0)/2) tensored with identities.
        let p = modulus(3);
        let hd = HeisenbergHd::new(p, 2).unwrap();
        for c in 1..3u64 {
            for i in 0..2usize {
                let quarter = Complex::new(0.25, 0.0);
                let mut acc = ComplexMatrix::zeros(9, 9);
                for g in [hd.e(i), hd.inv(&hd.e(i)), hd.f(i), hd.inv(&hd.f(i))] {
                    acc = acc.add(&rho_hd(p, 2, c, &g).unwrap().scale(quarter)).unwrap();
                }
                let pair = hermitian_twisted(p, 0, 1)
                    .add(&hermitian_twisted(p, c as i64, 0))
                    .unwrap()
                    .scale(Complex::new(0.5, 0.0));
                let id3 = ComplexMatrix::identity(3);
                let want = if i == 0 { pair.kron(&id3) } else { id3.kron(&pair) };
                assert!(acc.max_abs_diff(&want) < 1e-13, "c={c} slot {i}");
            }
        }
    }

    #[test]
    fn fourier_bound_dominates_exact_tv() {
        let g = h(5);
        let gens = standard_pair_set(&g, (1, 0), (0, 1)).unwrap();
        let bound = FourierBound::heisenberg(&g, &gens).unwrap();
        let curve = tv_curve(&g, &gens, 60);
        assert!(bound.at(0) >= 1.0 - 1.0 / 125.0);
        for (k, tv) in curve.iter().enumerate() {
            assert!(
                bound.at(k) >= tv - 1e-12,
                "k={k}: bound {} < tv {tv}",
                bound.at(k)
            );
        }
        assert!(matches!(
            FourierBound::heisenberg(&h(17), &standard_pair_set(&h(17), (1, 0), (0, 1)).unwrap()),
            Err(Error::ResourceGuard { .. })
        ));
    }

    #[test]
    fn generating_check_matches_bfs_closure() {
        // Oracle: breadth-first closure of the step set reaches all n^3
        // elements exactly when the determinant test passes.
        let n = 3u64;
        let g = h(n);
        let m = modulus(n);
        for r1 in 0..n {
            for s1 in 0..n {
                for r2 in 0..n {
                    for s2 in 0..n {
                        let gens = standard_pair_set(&g, (s1, r1), (s2, r2)).unwrap();
                        let mut reached = vec![false; g.order()];
                        let mut frontier = vec![g.identity()];
                        reached[g.index_of(&g.identity())] = true;
                        let mut count = 1usize;
                        while let Some(e) = frontier.pop() {
                            for (step, _) in gens.steps() {
                                let next = g.mul(&e, step);
                                let idx = g.index_of(&next);
                                if !reached[idx] {
                                    reached[idx] = true;
                                    count += 1;
                                    frontier.push(next);
                                }
                            }
                        }
                        let generates = count == g.order();
                        assert_eq!(
                            generates,
                            generating_check(m, r1, s1, r2, s2),
                            "(r1,s1,r2,s2) = ({r1},{s1},{r2},{s2})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn generating_check_examples() {
        let m = modulus(7);
        assert!(generating_check(m, 1, 0, 0, 1));
        assert!(!generating_check(m, 1, 1, 2, 2));
    }
}
