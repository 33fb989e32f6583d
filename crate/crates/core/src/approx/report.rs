use super::{connecting_chain, epsilon_chain, flavor_of, target_bounds, Approximation};
use crate::cyclic::{columns_for, Bounds, HomologyPresentation, HomologyTheory, Stability};
use crate::ell::{EllElement, EllMonomial, Flavor};
use crate::error::Result;
use crate::f2linalg::rank;
use crate::gralg::{Algebra, Weight};
use crate::hochschild::{Theory, UChain};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// The window of a report: `d ≤ max_internal`, `|n| ≤ max_homological`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ApproxOptions {
    pub max_internal: u32,
    pub max_homological: i64,
    /// Requested number of tower columns `S`; widened per weight to a
    /// provably sufficient value when the weight grading allows it.
    pub columns: i32,
    pub seed: u64,
    /// Number of sampled pairs for the product spot-checks.
    pub samples: usize,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        ApproxOptions {
            max_internal: 4,
            max_homological: 4,
            columns: 4,
            seed: 0,
            samples: 50,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Iso,
    NonIso,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bidegree {
    pub n: i64,
    pub degree: u32,
    pub weight: Weight,
}

/// `ψ` in one bidegree.
#[derive(Clone, Debug, Serialize)]
pub struct ApproxRecord {
    pub n: i64,
    pub degree: u32,
    pub weight: Weight,
    pub columns: i32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub verdict: Verdict,
    pub stability: Stability,
    pub relation_failures: usize,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SpotCheck {
    pub samples: usize,
    pub failures: usize,
}

/// One commuting square at one bidegree: the number of basis inputs on
/// which the two composites differ in homology.
#[derive(Clone, Debug, Serialize)]
pub struct SquareResidual {
    pub square: &'static str,
    pub n: i64,
    pub degree: u32,
    pub weight: Weight,
    pub checked: usize,
    pub residual: usize,
    pub offending: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproxReport {
    pub algebra: String,
    pub theory: &'static str,
    pub flavor: Flavor,
    pub window: ApproxOptions,
    pub records: Vec<ApproxRecord>,
    /// Truncation-limited bidegrees, left out of the verdict.
    pub excluded: Vec<Bidegree>,
    pub multiplicativity: Option<SpotCheck>,
    pub linearity: Option<SpotCheck>,
    pub squares: Vec<SquareResidual>,
}

impl ApproxReport {
    fn counted(&self) -> impl Iterator<Item = &ApproxRecord> {
        self.records.iter().filter(|r| r.stability.is_stable())
    }

    /// `ψ` is an isomorphism at every bidegree that was not excluded.
    pub fn is_iso_everywhere(&self) -> bool {
        self.counted().all(|r| r.verdict == Verdict::Iso)
    }

    pub fn non_iso(&self) -> Vec<&ApproxRecord> {
        self.counted().filter(|r| r.verdict == Verdict::NonIso).collect()
    }

    pub fn all_stable(&self) -> bool {
        self.excluded.is_empty()
    }

    pub fn well_defined(&self) -> bool {
        self.records.iter().all(|r| r.relation_failures == 0)
    }

    pub fn squares_vanish(&self) -> bool {
        self.squares.iter().all(|s| s.residual == 0)
    }

    pub fn spot_checks_pass(&self) -> bool {
        self.multiplicativity.iter().chain(&self.linearity).all(|s| s.failures == 0)
    }
}

/// The column window used for weight `w` when degrees down to `n_lo` are
/// involved; it is the same for every degree so that class coordinates of
/// related groups are compatible.
pub fn window_columns(alg: &Algebra, w: &Weight, n_lo: i64, requested: i32) -> i32 {
    columns_for(alg, n_lo - 2, w, requested)
}

fn weights_upto(alg: &Algebra, d: u32) -> Vec<Weight> {
    (0..=d).flat_map(|k| alg.weights_of_degree(k)).collect()
}

fn n_range(theory: HomologyTheory, nmax: i64) -> std::ops::RangeInclusive<i64> {
    match theory {
        HomologyTheory::Hc | HomologyTheory::Hh => 0..=nmax,
        _ => -nmax..=nmax,
    }
}

impl Approximation<'_> {
    fn cols(&self, w: &Weight, opts: &ApproxOptions) -> i32 {
        window_columns(self.alg, w, -opts.max_homological - 2, opts.columns)
    }

    fn class_of_product(
        &self,
        flavor: Flavor,
        x: (&EllMonomial, Flavor),
        y: &EllMonomial,
        n: i64,
        w: &Weight,
        opts: &ApproxOptions,
    ) -> Result<bool> {
        let alg = self.alg;
        let target = self.homology(target_bounds(flavor)?, n, w, self.cols(w, opts))?;
        let px = self.psi_chain(x.1, x.0)?;
        let py = self.psi_chain(flavor, y)?;
        let product = crate::hochschild::mu_chain(alg, &px, &py)?;
        let space = self.ell().space(flavor, n, w)?;
        let xy = self.ell().ring(flavor).mul_monomials(x.0, y)?;
        let reduced = space.element_of(&space.coordinates(&xy)?);
        let z = self.psi_element_chain(flavor, &reduced)?;
        target.is_boundary(&product.add(&z))
    }

    /// Samples pairs `(x, y)` of basis monomials and compares the class of
    /// `ψ(x)ψ(y)` with that of `ψ` of the reduced product.
    fn spot_check(&self, flavor: Flavor, left: Flavor, theory: HomologyTheory, opts: &ApproxOptions) -> Result<SpotCheck> {
        let alg = self.alg;
        let weights = weights_upto(alg, opts.max_internal);
        let nr = n_range(theory, opts.max_homological);
        let mut pool_left = Vec::new();
        let mut pool_right = Vec::new();
        for n in -opts.max_homological..=opts.max_homological {
            for w in &weights {
                if self.ell().space(left, n, w)?.dim() > 0 {
                    pool_left.push((n, w.clone()));
                }
                if self.ell().space(flavor, n, w)?.dim() > 0 {
                    pool_right.push((n, w.clone()));
                }
            }
        }
        let mut pairs = Vec::new();
        for (i, (n1, w1)) in pool_left.iter().enumerate() {
            for (j, (n2, w2)) in pool_right.iter().enumerate() {
                let w = w1.add(w2);
                if nr.contains(&(n1 + n2)) && alg.weight_degree(&w) <= opts.max_internal {
                    pairs.push((i, j));
                }
            }
        }
        let mut out = SpotCheck::default();
        if pairs.is_empty() {
            return Ok(out);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut jobs = Vec::with_capacity(opts.samples);
        for _ in 0..opts.samples {
            let (i, j) = pairs[rng.gen_range(0..pairs.len())];
            let (n1, w1) = &pool_left[i];
            let (n2, w2) = &pool_right[j];
            let sx = self.ell().space(left, *n1, w1)?;
            let sy = self.ell().space(flavor, *n2, w2)?;
            let x = sx.basis_monomials()[rng.gen_range(0..sx.dim())].clone();
            let y = sy.basis_monomials()[rng.gen_range(0..sy.dim())].clone();
            jobs.push((x, y, n1 + n2, w1.add(w2)));
        }
        let results: Vec<bool> = jobs
            .par_iter()
            .map(|(x, y, n, w)| self.class_of_product(flavor, (x, left), y, *n, w, opts))
            .collect::<Result<_>>()?;
        out.samples = results.len();
        out.failures = results.iter().filter(|ok| !**ok).count();
        Ok(out)
    }
}

/// `ψ`, `ψ⁺` or `ψ^per` over the window: per-bidegree dimensions, ranks and
/// verdicts, product spot-checks, and the commuting squares.
pub fn verify_approximation(alg: &Algebra, theory: HomologyTheory, opts: &ApproxOptions) -> Result<ApproxReport> {
    let flavor = flavor_of(theory)?;
    let ap = Approximation::new(alg);
    let mut jobs = Vec::new();
    for n in n_range(theory, opts.max_homological) {
        for w in weights_upto(alg, opts.max_internal) {
            jobs.push((n, w));
        }
    }
    let records: Vec<ApproxRecord> = jobs
        .par_iter()
        .map(|(n, w)| {
            let columns = ap.cols(w, opts);
            let psi = ap.psi_map(flavor, *n, w, columns)?;
            let source_dim = psi.source.dim();
            let target_dim = psi.target.dim();
            let r = rank(&psi.matrix);
            let verdict = if source_dim == target_dim && r == source_dim {
                Verdict::Iso
            } else {
                Verdict::NonIso
            };
            Ok(ApproxRecord {
                n: *n,
                degree: alg.weight_degree(w),
                weight: w.clone(),
                columns,
                source_dim,
                target_dim,
                rank: r,
                verdict,
                stability: psi.target.stability,
                relation_failures: psi.relation_failures,
            })
        })
        .collect::<Result<_>>()?;
    let excluded = records
        .iter()
        .filter(|r| !r.stability.is_stable())
        .map(|r| Bidegree {
            n: r.n,
            degree: r.degree,
            weight: r.weight.clone(),
        })
        .collect();
    let (multiplicativity, linearity) = match flavor {
        Flavor::EllPlus => (None, Some(ap.spot_check(flavor, Flavor::Ell, theory, opts)?)),
        _ => (Some(ap.spot_check(flavor, flavor, theory, opts)?), None),
    };
    let squares = squares_for(&ap, flavor, opts)?;
    Ok(ApproxReport {
        algebra: alg.name().to_string(),
        theory: theory.name(),
        flavor,
        window: *opts,
        records,
        excluded,
        multiplicativity,
        linearity,
        squares,
    })
}

/// Every commuting square relating `ψ`, `ψ⁺` and `ψ^per` to the long exact
/// sequences, over the window.
pub fn verify_squares(alg: &Algebra, opts: &ApproxOptions) -> Result<Vec<SquareResidual>> {
    let ap = Approximation::new(alg);
    let mut out = Vec::new();
    for flavor in [Flavor::Ell, Flavor::EllPlus, Flavor::EllPer] {
        out.extend(squares_for(&ap, flavor, opts)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
enum Square {
    HPsi,
    PsiTau,
    PsiU,
    PlusI,
    PlusU,
    EpsD,
    PerIota,
    PlusS,
    PsiPartial,
}

impl Square {
    fn name(self) -> &'static str {
        match self {
            Square::HPsi => "h∘ψ = ε∘r",
            Square::PsiTau => "ψ∘τ = ∂∘ε",
            Square::PsiU => "ψ∘u = u∘ψ",
            Square::PlusI => "ψ⁺∘I = I∘ε",
            Square::PlusU => "ψ⁺∘u = u∘ψ⁺",
            Square::EpsD => "ε∘D = ∂∘ψ⁺",
            Square::PerIota => "ψ^per∘ι = ι∘ψ",
            Square::PlusS => "ψ⁺∘S = S∘ψ^per",
            Square::PsiPartial => "ψ∘∂ = ∂∘ψ⁺",
        }
    }

    /// The squares belonging to the theorem about each flavor.
    fn of(flavor: Flavor) -> &'static [Square] {
        match flavor {
            Flavor::Ell => &[Square::HPsi, Square::PsiTau, Square::PsiU],
            Flavor::EllPlus => &[Square::PlusI, Square::PlusU, Square::EpsD],
            Flavor::EllPer => &[Square::PerIota, Square::PlusS, Square::PsiPartial],
            _ => &[],
        }
    }

    /// Source degrees checked, for `|n| ≤ nmax`.
    fn degrees(self, nmax: i64) -> std::ops::RangeInclusive<i64> {
        match self {
            Square::HPsi | Square::PlusI => 0..=nmax,
            Square::PsiTau | Square::EpsD | Square::PsiPartial => 0..=nmax - 1,
            Square::PsiU => -nmax..=nmax - 2,
            Square::PlusU | Square::PlusS => 2..=nmax,
            Square::PerIota => -nmax..=nmax,
        }
    }
}

type Inputs = Vec<(String, UChain, UChain)>;

fn squares_for(ap: &Approximation, flavor: Flavor, opts: &ApproxOptions) -> Result<Vec<SquareResidual>> {
    let alg = ap.algebra();
    let mut jobs = Vec::new();
    for &sq in Square::of(flavor) {
        for n in sq.degrees(opts.max_homological) {
            for w in weights_upto(alg, opts.max_internal) {
                jobs.push((sq, n, w));
            }
        }
    }
    jobs.par_iter()
        .map(|(sq, n, w)| square_at(ap, *sq, *n, w, ap.cols(w, opts)))
        .collect()
}

fn ell_inputs(
    ap: &Approximation,
    flavor: Flavor,
    n: i64,
    w: &Weight,
    f: impl Fn(&EllMonomial) -> Result<(UChain, UChain)>,
) -> Result<Inputs> {
    let alg = ap.algebra();
    ap.ell()
        .space(flavor, n, w)?
        .basis_monomials()
        .iter()
        .map(|m| {
            let (a, b) = f(m)?;
            Ok((m.format(alg), a, b))
        })
        .collect()
}

fn form_inputs(
    ap: &Approximation,
    n: i64,
    w: &Weight,
    f: impl Fn(&crate::derham::OmegaForm) -> Result<(UChain, UChain)>,
) -> Result<Inputs> {
    let alg = ap.algebra();
    let space = ap.ell().derham().omega_basis(n as usize, w)?;
    (0..space.dim())
        .map(|k| {
            let form = space.basis_form(k);
            let (a, b) = f(&form)?;
            Ok((form.format(alg), a, b))
        })
        .collect()
}

fn square_at(ap: &Approximation, sq: Square, n: i64, w: &Weight, columns: i32) -> Result<SquareResidual> {
    let alg = ap.algebra();
    let ell = ap.ell();
    let hh = Bounds::HH.chain_theory();
    let u = EllMonomial {
        u: 1,
        ..EllMonomial::one()
    };
    let psi = |flavor: Flavor, x: &EllElement| ap.psi_element_chain(flavor, x);
    let (target_bounds, target_n, inputs): (Bounds, i64, Inputs) = match sq {
        Square::HPsi => (
            Bounds::HH,
            n,
            ell_inputs(ap, Flavor::Ell, n, w, |m| {
                let a = ap.psi_chain(Flavor::Ell, m)?;
                let h = UChain::single(hh, 0, a.get(0).cloned().unwrap_or_default())?;
                Ok((h, epsilon_chain(alg, &ell.r_form(m)?, hh)?))
            })?,
        ),
        Square::PsiTau => (
            Bounds::MINUS,
            n + 1,
            form_inputs(ap, n, w, |f| {
                let a = psi(Flavor::Ell, &ell.tau(f)?)?;
                let b = connecting_chain(alg, &epsilon_chain(alg, f, Theory::Minus)?, Theory::Minus)?;
                Ok((a, b))
            })?,
        ),
        Square::PsiU => (
            Bounds::MINUS,
            n,
            ell_inputs(ap, Flavor::Ell, n + 2, w, |m| {
                let a = psi(Flavor::Ell, &ell.ring(Flavor::Ell).mul_monomials(&u, m)?)?;
                Ok((a, ap.psi_chain(Flavor::Ell, m)?.shift(1)))
            })?,
        ),
        Square::PlusI => (
            Bounds::PLUS,
            n,
            form_inputs(ap, n, w, |f| {
                Ok((psi(Flavor::EllPlus, &ell.i_map(f)?)?, epsilon_chain(alg, f, Theory::Plus)?))
            })?,
        ),
        Square::PlusU => (
            Bounds::PLUS,
            n - 2,
            ell_inputs(ap, Flavor::EllPlus, n, w, |m| {
                let a = psi(Flavor::EllPlus, &ell.ring(Flavor::EllPlus).mul_monomials(&u, m)?)?;
                Ok((a, ap.psi_chain(Flavor::EllPlus, m)?.shift(1)))
            })?,
        ),
        Square::EpsD => (
            Bounds::HH,
            n + 1,
            ell_inputs(ap, Flavor::EllPlus, n, w, |m| {
                let a = epsilon_chain(alg, &ell.d_form(m)?, hh)?;
                Ok((a, connecting_chain(alg, &ap.psi_chain(Flavor::EllPlus, m)?, hh)?))
            })?,
        ),
        Square::PerIota => (
            Bounds::PER,
            n,
            ell_inputs(ap, Flavor::Ell, n, w, |m| {
                let a = psi(Flavor::EllPer, &ell.ring(Flavor::EllPer).normalize(m)?)?;
                Ok((a, ap.psi_chain(Flavor::Ell, m)?.with_theory(Theory::Per)))
            })?,
        ),
        Square::PlusS => (
            Bounds::PLUS,
            n - 2,
            ell_inputs(ap, Flavor::EllPer, n, w, |m| {
                let a = psi(Flavor::EllPlus, &ell.s_image(m)?)?;
                Ok((a, ap.psi_chain(Flavor::EllPer, m)?.shift(1).with_theory(Theory::Plus)))
            })?,
        ),
        Square::PsiPartial => (
            Bounds::MINUS,
            n + 1,
            ell_inputs(ap, Flavor::EllPlus, n, w, |m| {
                let a = psi(Flavor::Ell, &ell.partial_image(m)?)?;
                Ok((a, connecting_chain(alg, &ap.psi_chain(Flavor::EllPlus, m)?, Theory::Minus)?))
            })?,
        ),
    };
    let mut out = SquareResidual {
        square: sq.name(),
        n,
        degree: alg.weight_degree(w),
        weight: w.clone(),
        checked: inputs.len(),
        residual: 0,
        offending: Vec::new(),
    };
    if inputs.is_empty() {
        return Ok(out);
    }
    let target: std::sync::Arc<HomologyPresentation> = ap.homology(target_bounds, target_n, w, columns)?;
    for (label, a, b) in inputs {
        let a = a.with_theory(target_bounds.chain_theory());
        let b = b.with_theory(target_bounds.chain_theory());
        if !target.is_boundary(&a.add(&b))? {
            out.residual += 1;
            if out.offending.len() < 5 {
                out.offending.push(label);
            }
        }
    }
    Ok(out)
}
