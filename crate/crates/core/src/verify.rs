//! The verification battery: both halves of the main comparison, the perfect pairing, and
//! the supporting lemma checks, assembled into a [`VerificationReport`].

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{basis, binomial, lex_index, Monomial, Multivector};
use crate::fan::{fk_all_flags, fk_flag_generators, flag_monomial, Fan};
use crate::lattice::{determinant, integer_kernel, LatticeSubgroup, Row};
use crate::matroid::Matroid;
use crate::orlik_solomon::{
    degree_fragment, os0_ideal_degree, os_ideal_degree, os_ideal_degree_with, os_ideal_oracle,
    os_restricted_ideal, GeneratorPolicy, OsIdealDegree, ProjectiveIdealDegree,
};
use crate::report::{
    CheckResult, DegreeComparison, DegreeRecord, FanSummary, Status, VerificationReport, BATTERY,
    SCHEMA_VERSION,
};

pub const DEFAULT_MAX_ORACLE_SIZE: usize = 8;
/// Environment variable overriding the oracle size limit.
pub const ORACLE_ENV: &str = "BERGMAN_OS_MAX_ORACLE";

const RANDOM_TRIALS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub lemmas: bool,
    pub oracle: bool,
    /// Largest ground set on which brute-force and exhaustive checks run.
    pub max_oracle_size: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            lemmas: false,
            oracle: false,
            max_oracle_size: DEFAULT_MAX_ORACLE_SIZE,
            seed: 0,
        }
    }
}

/// Fans, tropical homology and ideal pieces of one matroid, computed once and shared by
/// every check.
pub struct Context<'a> {
    pub matroid: &'a Matroid,
    pub affine: Fan,
    pub bergman: Fan,
    /// `F_k(Σ)` for `k = 0..=n`.
    pub fk_affine: Vec<LatticeSubgroup>,
    /// `F_k(Σ₀)` for `k = 0..n`.
    pub fk_projective: Vec<LatticeSubgroup>,
    pub os: Vec<OsIdealDegree>,
    pub os0: Vec<ProjectiveIdealDegree>,
}

impl<'a> Context<'a> {
    pub fn new(m: &'a Matroid) -> Self {
        let n = m.ground_size();
        let affine = Fan::affine(m);
        let bergman = Fan::bergman(m);
        Context {
            matroid: m,
            fk_affine: (0..=n).map(|k| affine.fk_lattice(k)).collect(),
            fk_projective: (0..n).map(|k| bergman.fk_lattice(k)).collect(),
            os: (0..=n).map(|k| os_ideal_degree(m, k)).collect(),
            os0: (0..n).map(|k| os0_ideal_degree(m, k)).collect(),
            affine,
            bergman,
        }
    }

    fn n(&self) -> usize {
        self.matroid.ground_size()
    }
}

fn describe(v: &Row, ambient: usize, degree: usize) -> String {
    Multivector::from_coordinates(ambient, degree, v).to_text("f")
}

/// Records one degree of an exact subgroup comparison, failing `check` with a witness from
/// the symmetric difference if the sides differ.
fn compare(
    check: &mut CheckResult,
    degree: usize,
    left: &LatticeSubgroup,
    right: &LatticeSubgroup,
    names: (&str, &str),
    ambient: usize,
) -> bool {
    let equal = left == right;
    check.degrees.push(DegreeComparison {
        degree,
        left_rank: left.rank(),
        right_rank: right.rank(),
        equal,
    });
    if !equal {
        let witness = left.difference_witness(right).map(|(v, in_left)| {
            let (a, b) = if in_left { names } else { (names.1, names.0) };
            format!(
                "{} lies in {a} but not in {b}",
                describe(&v, ambient, degree)
            )
        });
        check.fail(
            format!(
                "degree {degree}: {} (rank {}) differs from {} (rank {})",
                names.0,
                left.rank(),
                names.1,
                right.rank()
            ),
            witness,
        );
    }
    equal
}

fn finish(mut check: CheckResult, summary: impl FnOnce() -> String) -> CheckResult {
    if check.status == Status::Pass {
        check.details = summary();
    }
    check
}

pub fn verify_theorem_affine(m: &Matroid) -> CheckResult {
    theorem_affine(&Context::new(m))
}

pub fn verify_theorem_projective(m: &Matroid) -> CheckResult {
    theorem_projective(&Context::new(m))
}

fn theorem_affine(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("theorem.affine");
    let n = ctx.n();
    for k in 0..=n {
        let ann = ctx.fk_affine[k].annihilator();
        compare(
            &mut check,
            k,
            &ann,
            &ctx.os[k].subgroup,
            ("ann F_k(Σ)", "OS ideal"),
            n,
        );
    }
    finish(check, || {
        format!("ann F_k(Σ) = OS ideal in degrees 0..={n}")
    })
}

fn theorem_projective(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("theorem.projective");
    let n0 = ctx.n() - 1;
    for k in 0..=n0 {
        let fk = &ctx.fk_projective[k];
        let ann = fk.annihilator();
        let ideal = &ctx.os0[k].subgroup;
        if !compare(&mut check, k, &ann, ideal, ("ann F_k(Σ₀)", "OS₀ ideal"), n0) {
            continue;
        }
        let cohomology_rank = fk.rank();
        let os0_rank = binomial(n0, k) - ideal.rank();
        if cohomology_rank != os0_rank {
            check.fail(
                format!("degree {k}: rank F^k = {cohomology_rank} but rank OS₀^k = {os0_rank}"),
                None,
            );
        }
        let torsion_f = ann.quotient_torsion();
        let torsion_os = ideal.quotient_torsion();
        if !torsion_f.is_empty() || !torsion_os.is_empty() {
            check.fail(
                format!("degree {k}: torsion F^k {torsion_f:?}, OS₀^k {torsion_os:?}"),
                None,
            );
        }
    }
    if let Some((k, w)) = ctx.bergman.ideal_property_witness() {
        check.fail(
            format!("annihilators of F_•(Σ₀) are not an ideal in degree {k}"),
            Some(w.to_text("f")),
        );
    }
    finish(check, || {
        format!("ann F_k(Σ₀) = OS₀ ideal, equal ranks, no torsion, graded ideal; degrees 0..={n0}")
    })
}

/// Determinant of the pairing between a basis of `F_k(Σ₀)` and lifts of a basis of `OS₀^k`.
pub fn pairing_determinant(fk: &LatticeSubgroup, ideal: &LatticeSubgroup) -> Option<BigInt> {
    let complement = ideal.complement_basis();
    if complement.len() != fk.rank() {
        return None;
    }
    let matrix: Vec<Row> = fk
        .basis()
        .iter()
        .map(|a| {
            complement
                .iter()
                .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    Some(if matrix.is_empty() {
        BigInt::one()
    } else {
        determinant(&matrix)
    })
}

fn perfect_pairing(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("theorem.perfect_pairing");
    let n0 = ctx.n() - 1;
    for k in 0..=n0 {
        let fk = &ctx.fk_projective[k];
        let ideal = &ctx.os0[k].subgroup;
        let ok = match pairing_determinant(fk, ideal) {
            Some(det) if det.abs().is_one() => true,
            Some(det) => {
                check.fail(format!("degree {k}: pairing determinant {det}"), None);
                false
            }
            None => {
                check.fail(
                    format!(
                        "degree {k}: rank F_k(Σ₀) = {} but rank OS₀^k = {}",
                        fk.rank(),
                        binomial(n0, k) - ideal.rank()
                    ),
                    None,
                );
                false
            }
        };
        check.degrees.push(DegreeComparison {
            degree: k,
            left_rank: fk.rank(),
            right_rank: binomial(n0, k) - ideal.rank(),
            equal: ok,
        });
    }
    finish(check, || {
        format!("pairing F_k(Σ₀) x OS₀^k unimodular in degrees 0..={n0}")
    })
}

fn affine_oracle(ctx: &Context, opts: &VerifyOptions) -> CheckResult {
    const ID: &str = "theorem.affine_oracle";
    if !opts.oracle {
        return CheckResult::skipped(ID, "not requested (--oracle)");
    }
    let n = ctx.n();
    let mut check = CheckResult::new(ID);
    for k in 0..=n {
        match os_ideal_oracle(ctx.matroid, k, opts.max_oracle_size) {
            Ok(oracle) => {
                let ann = ctx.fk_affine[k].annihilator();
                compare(
                    &mut check,
                    k,
                    &ann,
                    &oracle,
                    ("ann F_k(Σ)", "brute-force ideal"),
                    n,
                );
            }
            Err(e) => return CheckResult::skipped(ID, e.to_string()),
        }
    }
    finish(check, || {
        format!("ann F_k(Σ) = brute-force ideal in degrees 0..={n}")
    })
}

fn flag_reduction(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("lemma.flag_reduction");
    let m = ctx.matroid;
    let n = ctx.n();
    for (projective, fans, ambient) in [
        (false, &ctx.fk_affine, n),
        (true, &ctx.fk_projective, n - 1),
    ] {
        let label = if projective { "Σ₀" } else { "Σ" };
        for (k, fan_side) in fans.iter().enumerate() {
            let all = fk_all_flags(m, k, projective);
            let consecutive = fk_flag_generators(m, k, projective);
            compare(
                &mut check,
                k,
                &all,
                &consecutive,
                ("all-flags span", "consecutive-flags span"),
                ambient,
            );
            compare(
                &mut check,
                k,
                fan_side,
                &all,
                ("F_k fan definition", "all-flags span"),
                ambient,
            );
            if check.status == Status::Fail {
                check.details = format!("{label}: {}", check.details);
                return check;
            }
        }
    }
    finish(check, || {
        "consecutive flags = all flags = fan definition, Σ and Σ₀".into()
    })
}

fn flag_expansion(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("lemma.flag_expansion");
    let m = ctx.matroid;
    let mut count = 0usize;
    for k in 0..=m.rank() {
        for flag in m.flags(k, false, false) {
            count += 1;
            let w = flag_monomial(m, &flag);
            let masks: Vec<u64> = flag.chain.iter().map(|f| f.mask()).collect();
            let layers: Vec<u64> = masks
                .iter()
                .scan(0u64, |prev, &mask| {
                    let layer = mask & !*prev;
                    *prev = mask;
                    Some(layer)
                })
                .collect();
            let expected: usize = layers.iter().map(|l| l.count_ones() as usize).product();
            let bad = w.terms().find(|(mono, c)| {
                !c.abs().is_one()
                    || m.rank_mask(mono.0) != k
                    || layers.iter().any(|l| (mono.0 & l).count_ones() != 1)
            });
            if let Some((mono, _)) = bad {
                let flats: Vec<String> = flag.chain.iter().map(|f| f.to_string()).collect();
                check.fail(
                    format!("flag {} expands with bad term {mono:?}", flats.join(" < ")),
                    Some(w.to_text("f")),
                );
                return check;
            }
            if w.terms().count() != expected {
                check.fail(
                    format!(
                        "flag expansion has {} terms, expected {expected}",
                        w.terms().count()
                    ),
                    Some(w.to_text("f")),
                );
                return check;
            }
        }
    }
    finish(check, || {
        format!("{count} flags expand into ±1 sums of independent transversal monomials")
    })
}

fn flat_partition(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("lemma.flat_partition");
    let m = ctx.matroid;
    let flats = m.all_flats();
    let mut pairs = 0usize;
    for lower in &flats {
        for upper in &flats {
            let (a, b) = (lower.mask(), upper.mask());
            if a & !b != 0 || upper.rank < lower.rank + 2 {
                continue;
            }
            pairs += 1;
            let mut union = 0u64;
            let mut disjoint = true;
            for mid in flats
                .iter()
                .filter(|f| f.rank == lower.rank + 1 && f.mask() & !b == 0 && a & !f.mask() == 0)
            {
                let part = mid.mask() & !a;
                disjoint &= union & part == 0;
                union |= part;
            }
            if !disjoint || union != b & !a {
                check.fail(
                    format!("covers of {lower} inside {upper} do not partition {upper} \\ {lower}"),
                    None,
                );
                return check;
            }
        }
    }
    finish(check, || {
        format!("covering flats partition the difference for {pairs} flat pairs")
    })
}

fn leibniz_generators(ctx: &Context, opts: &VerifyOptions) -> CheckResult {
    const ID: &str = "lemma.leibniz_generators";
    let n = ctx.n();
    let mut check = CheckResult::new(ID);
    for k in 0..=n {
        match os_ideal_oracle(ctx.matroid, k, opts.max_oracle_size) {
            Ok(oracle) => {
                compare(
                    &mut check,
                    k,
                    &ctx.os[k].subgroup,
                    &oracle,
                    ("generator span", "brute-force ideal"),
                    n,
                );
            }
            Err(e) => return CheckResult::skipped(ID, e.to_string()),
        }
    }
    finish(check, || {
        format!("generators span the brute-force ideal in degrees 0..={n}")
    })
}

fn rank_exact_generators(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("lemma.rank_exact_generators");
    let n = ctx.n();
    for k in 0..=n {
        let exact = os_ideal_degree_with(ctx.matroid, k, GeneratorPolicy::RankExact).subgroup;
        compare(
            &mut check,
            k,
            &exact,
            &ctx.os[k].subgroup,
            ("rank-exact span", "all-dependent span"),
            n,
        );
    }
    finish(check, || {
        "rank-exact boundary generators suffice in every degree".into()
    })
}

/// Matrix of `∂: ∧^k → ∧^(k-1)`, rows indexed by `(k-1)`-monomials.
fn boundary_matrix(n: usize, k: usize) -> Vec<Row> {
    if k == 0 {
        return Vec::new();
    }
    let cols = basis(n, k);
    let mut rows = vec![vec![BigInt::zero(); cols.len()]; binomial(n, k - 1)];
    for (j, mono) in cols.iter().enumerate() {
        for (target, c) in Multivector::monomial(n, &mono.indices()).boundary().terms() {
            rows[lex_index(n, target)][j] = c.clone();
        }
    }
    rows
}

fn boundary_image(n: usize, k: usize) -> LatticeSubgroup {
    if k >= n {
        return LatticeSubgroup::zero(binomial(n, k));
    }
    let images = basis(n, k + 1).into_iter().map(|mono| {
        Multivector::monomial(n, &mono.indices())
            .boundary()
            .coordinates()
    });
    LatticeSubgroup::span(binomial(n, k), images)
}

fn boundary_kernel(n: usize, k: usize) -> LatticeSubgroup {
    LatticeSubgroup::span(
        binomial(n, k),
        integer_kernel(binomial(n, k), &boundary_matrix(n, k)),
    )
}

fn top_degree(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("lemma.top_degree");
    let m = ctx.matroid;
    let (n, r) = (ctx.n(), m.rank());
    let dependent = m
        .dependent_sets(r)
        .into_iter()
        .map(|mask| Multivector::monomial(n, &Monomial(mask).indices()).coordinates());
    let image = boundary_image(n, r);
    let expected = LatticeSubgroup::span(binomial(n, r), dependent)
        .sum(&image)
        .expect("same ambient");
    compare(
        &mut check,
        r,
        &ctx.os[r].subgroup,
        &expected,
        ("OS ideal", "dependent monomials + image ∂"),
        n,
    );
    compare(
        &mut check,
        r,
        &image,
        &boundary_kernel(n, r),
        ("image ∂", "kernel ∂"),
        n,
    );
    for k in r + 1..=n {
        if !ctx.os[k].subgroup.is_full() {
            check.fail(format!("degree {k} > rank: OS^k is nonzero"), None);
        }
    }
    finish(check, || {
        format!("top degree {r} described by dependent monomials and image ∂; OS vanishes above")
    })
}

fn intersection_over_flats(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("lemma.intersection_over_flats");
    let m = ctx.matroid;
    let n = ctx.n();
    for k in 0..=m.rank() {
        let mut meet = LatticeSubgroup::full(binomial(n, k));
        for flat in m.flats(k) {
            let restricted = os_restricted_ideal(m, &flat, k).expect("flat");
            meet = meet.intersect(&restricted).expect("same ambient");
        }
        compare(
            &mut check,
            k,
            &ctx.os[k].subgroup,
            &meet,
            ("OS ideal", "intersection over rank-k flats"),
            n,
        );
    }
    finish(check, || "OS^k = ∩ OS^k(J) over rank-k flats J".into())
}

fn projective_generation(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("lemma.projective_generation");
    let n0 = ctx.n() - 1;
    for piece in &ctx.os0 {
        compare(
            &mut check,
            piece.degree,
            &piece.subgroup,
            &piece.boundary_span,
            ("OS ideal ∩ ∧W₀", "span of ∂F_I"),
            n0,
        );
    }
    finish(check, || {
        "OS₀ ideal is spanned by the ∂F_I in every degree".into()
    })
}

fn ideal_property(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("lemma.ideal_property");
    for (name, fan) in [("Σ", &ctx.affine), ("Σ₀", &ctx.bergman)] {
        if let Some((k, w)) = fan.ideal_property_witness() {
            check.fail(
                format!("{name}: ann F_{k} ∧ W ⊄ ann F_{}", k + 1),
                Some(w.to_text("f")),
            );
        }
    }
    finish(check, || {
        "annihilators form graded ideals for Σ and Σ₀".into()
    })
}

fn boundary_complex(ctx: &Context, opts: &VerifyOptions) -> CheckResult {
    const ID: &str = "lemma.boundary_complex";
    let n = ctx.n();
    if n > opts.max_oracle_size {
        return CheckResult::skipped(
            ID,
            format!("ground size {n} exceeds limit {}", opts.max_oracle_size),
        );
    }
    let mut check = CheckResult::new(ID);
    for k in 0..=n {
        for mono in basis(n, k) {
            let dd = Multivector::monomial(n, &mono.indices())
                .boundary()
                .boundary();
            if !dd.is_zero() {
                check.fail(format!("∂∂ ≠ 0 in degree {k}"), Some(dd.to_text("f")));
                return check;
            }
        }
        let image = boundary_image(n, k);
        let kernel = boundary_kernel(n, k);
        compare(&mut check, k, &image, &kernel, ("image ∂", "kernel ∂"), n);
        let below = binomial(n, k) - kernel.rank();
        if image.rank() + below != binomial(n, k) {
            check.fail(format!("degree {k}: ranks of ∂ do not add up"), None);
        }
    }
    finish(check, || format!("∂∂ = 0 and image = kernel on ∧Z^{n}"))
}

fn adjointness(ctx: &Context, opts: &VerifyOptions) -> CheckResult {
    const ID: &str = "lemma.adjointness";
    let n = ctx.n();
    let limit = opts.max_oracle_size.min(6);
    if n > limit {
        return CheckResult::skipped(
            ID,
            format!("ground size {n} exceeds exhaustive limit {limit}"),
        );
    }
    let mut check = CheckResult::new(ID);
    let mut pairs = 0usize;
    for k in 0..n {
        for a in basis(n, k) {
            let lifted = Multivector::monomial(n, &a.indices()).wedge_top();
            for b in basis(n, k + 1) {
                let b = Multivector::monomial(n, &b.indices());
                pairs += 1;
                let left = lifted.pairing(&b).expect("degrees");
                let right = Multivector::monomial(n, &a.indices())
                    .pairing(&b.boundary())
                    .expect("degrees");
                if left != right {
                    check.fail(
                        format!("<e_M∧x, y> = {left} but <x, ∂y> = {right}"),
                        Some(b.to_text("f")),
                    );
                    return check;
                }
            }
        }
    }
    finish(check, || {
        format!("e_M∧ is adjoint to ∂ on all {pairs} basis pairs")
    })
}

fn balanced(ctx: &Context) -> CheckResult {
    let mut check = CheckResult::new("lemma.balanced");
    match ctx.bergman.check_balanced() {
        Ok(true) => {}
        Ok(false) => check.fail("Σ₀ is not balanced", None),
        Err(e) => check.fail(format!("Σ₀ is not balanced: {e}"), None),
    }
    finish(check, || "Σ₀ is pure and balanced with weights 1".into())
}

fn random_decomposable(rng: &mut ChaCha8Rng, n: usize, degree: usize) -> Multivector {
    (0..degree).fold(Multivector::scalar(n, 1), |acc, _| {
        let v: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
            .collect();
        acc.wedge(&Multivector::vector(&v)).expect("ambient")
    })
}

fn leibniz_rule_random(ctx: &Context, opts: &VerifyOptions) -> CheckResult {
    let mut check = CheckResult::new("lemma.leibniz_rule_random");
    let n = ctx.n();
    if n < 2 {
        return finish(check, || "no products of positive degree".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..RANDOM_TRIALS {
        let p = rng.gen_range(1..n);
        let q = rng.gen_range(1..=n - p);
        let a = random_decomposable(&mut rng, n, p);
        let b = random_decomposable(&mut rng, n, q);
        let left = a.wedge(&b).expect("ambient").boundary();
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let right = a
            .boundary()
            .wedge(&b)
            .and_then(|x| x.add(&a.wedge(&b.boundary())?.scale(&BigInt::from(sign))))
            .expect("degrees");
        if left != right {
            check.fail(
                format!("∂(a∧b) differs from ∂a∧b ± a∧∂b for a = {}", a.to_text("f")),
                Some(b.to_text("f")),
            );
            return check;
        }
    }
    finish(check, || {
        format!(
            "{RANDOM_TRIALS} random decomposable pairs, seed {}",
            opts.seed
        )
    })
}

fn double_annihilator_random(ctx: &Context, opts: &VerifyOptions) -> CheckResult {
    let mut check = CheckResult::new("lemma.double_annihilator_random");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ctx.n() as u64);
    for _ in 0..RANDOM_TRIALS {
        let d = rng.gen_range(1..=6);
        let count = rng.gen_range(0..=d + 1);
        let rows: Vec<Vec<i64>> = (0..count)
            .map(|_| (0..d).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let lattice = LatticeSubgroup::span_i64(d, &rows);
        let twice = lattice.annihilator().annihilator();
        let saturated = lattice.saturate();
        if twice != saturated {
            let witness = twice
                .difference_witness(&saturated)
                .map(|(v, _)| format!("{v:?}"));
            check.fail(
                format!("ann(ann L) ≠ saturation for generators {rows:?}"),
                witness,
            );
            return check;
        }
    }
    finish(check, || {
        format!("{RANDOM_TRIALS} random lattices, seed {}", opts.seed)
    })
}

/// Runs every lemma check, in battery order.
pub fn verify_lemmas(m: &Matroid, opts: &VerifyOptions) -> Vec<CheckResult> {
    let ctx = Context::new(m);
    BATTERY
        .iter()
        .filter(|id| id.starts_with("lemma."))
        .map(|id| run_check(id, &ctx, opts))
        .collect()
}

fn run_check(id: &str, ctx: &Context, opts: &VerifyOptions) -> CheckResult {
    match id {
        "theorem.affine" => theorem_affine(ctx),
        "theorem.projective" => theorem_projective(ctx),
        "theorem.perfect_pairing" => perfect_pairing(ctx),
        "theorem.affine_oracle" => affine_oracle(ctx, opts),
        "lemma.flag_reduction" => flag_reduction(ctx),
        "lemma.flag_expansion" => flag_expansion(ctx),
        "lemma.flat_partition" => flat_partition(ctx),
        "lemma.leibniz_generators" => leibniz_generators(ctx, opts),
        "lemma.rank_exact_generators" => rank_exact_generators(ctx),
        "lemma.top_degree" => top_degree(ctx),
        "lemma.intersection_over_flats" => intersection_over_flats(ctx),
        "lemma.projective_generation" => projective_generation(ctx),
        "lemma.ideal_property" => ideal_property(ctx),
        "lemma.boundary_complex" => boundary_complex(ctx, opts),
        "lemma.adjointness" => adjointness(ctx, opts),
        "lemma.balanced" => balanced(ctx),
        "lemma.leibniz_rule_random" => leibniz_rule_random(ctx, opts),
        "lemma.double_annihilator_random" => double_annihilator_random(ctx, opts),
        other => unreachable!("unknown check {other}"),
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

/// Full report for one matroid. Lemma checks are skipped unless `opts.lemmas` is set.
pub fn verify(name: &str, m: &Matroid, opts: &VerifyOptions) -> VerificationReport {
    let mut timing = BTreeMap::new();
    let start = Instant::now();
    let ctx = Context::new(m);
    timing.insert("setup".to_string(), elapsed_ms(start));

    let checks = BATTERY
        .iter()
        .map(|id| {
            if id.starts_with("lemma.") && !opts.lemmas {
                return CheckResult::skipped(id, "not requested (--lemmas)");
            }
            let start = Instant::now();
            let result = run_check(id, &ctx, opts);
            timing.insert(id.to_string(), elapsed_ms(start));
            result
        })
        .collect();

    let n = m.ground_size();
    let degrees = (0..=m.rank())
        .map(|k| {
            let ideal0 = ctx.os0.get(k).map(|p| &p.subgroup);
            let fragment = degree_fragment(n, k, &ctx.os[k].subgroup, ideal0);
            DegreeRecord::new(
                &fragment,
                ctx.fk_affine[k].rank(),
                ctx.fk_projective.get(k).map_or(0, LatticeSubgroup::rank),
            )
        })
        .collect();

    VerificationReport {
        schema_version: SCHEMA_VERSION,
        artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        matroid_name: name.to_string(),
        source: m.source().to_string(),
        ground_size: n,
        rank: m.rank(),
        validated: m.validated(),
        fans: FanSummary {
            affine: ctx.affine.stats().into(),
            bergman: ctx.bergman.stats().into(),
        },
        degrees,
        checks,
        timing_ms: timing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::report::validate_report_json;

    fn all_options() -> VerifyOptions {
        VerifyOptions {
            lemmas: true,
            oracle: true,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn m1_and_m2_pass_everything() {
        for (name, m) in [("m1", fixtures::m1()), ("m2", fixtures::m2())] {
            let report = verify(name, &m, &all_options());
            for c in &report.checks {
                assert_eq!(
                    c.status,
                    Status::Pass,
                    "{name} {}: {}",
                    c.check_id,
                    c.details
                );
            }
            validate_report_json(&report.to_json()).unwrap();
        }
    }

    #[test]
    fn m2_degree_two_ranks() {
        let report = verify("m2", &fixtures::m2(), &VerifyOptions::default());
        let d2 = &report.degrees[2];
        assert_eq!((d2.fk_projective_rank, d2.os0_rank), (6, 6));
        assert_eq!(report.fans.bergman.rays, 13);
    }

    #[test]
    fn options_control_skipping() {
        let report = verify("m1", &fixtures::m1(), &VerifyOptions::default());
        let skipped: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.status == Status::Skipped)
            .map(|c| c.check_id.as_str())
            .collect();
        assert_eq!(skipped.len(), BATTERY.len() - 3);
        assert!(skipped.contains(&"theorem.affine_oracle"));

        let opts = VerifyOptions {
            max_oracle_size: 3,
            ..all_options()
        };
        let report = verify("m1", &fixtures::m1(), &opts);
        let oracle = report
            .checks
            .iter()
            .find(|c| c.check_id == "theorem.affine_oracle")
            .unwrap();
        assert_eq!(oracle.status, Status::Skipped);
        assert!(report.passed());
    }

    #[test]
    fn failed_comparisons_carry_witnesses() {
        let mut check = CheckResult::new("x");
        let a = LatticeSubgroup::span_i64(3, &[vec![1, 0, 0]]);
        let b = LatticeSubgroup::span_i64(3, &[vec![0, 1, 0]]);
        assert!(!compare(&mut check, 1, &a, &b, ("A", "B"), 3));
        assert_eq!(check.status, Status::Fail);
        assert_eq!(
            check.witness.as_deref(),
            Some("+1*f0 lies in A but not in B")
        );
    }

    #[test]
    fn pairing_detects_index() {
        let fk = LatticeSubgroup::span_i64(2, &[vec![2, 0]]);
        let ideal = LatticeSubgroup::span_i64(2, &[vec![0, 1]]);
        assert_eq!(pairing_determinant(&fk, &ideal), Some(BigInt::from(2)));
        let fk = LatticeSubgroup::span_i64(2, &[vec![1, 5]]);
        assert_eq!(
            pairing_determinant(&fk, &ideal).map(|d| d.abs()),
            Some(BigInt::one())
        );
    }

    #[test]
    fn free_matroid_has_zero_ideals() {
        let m = fixtures::uniform(3, 3).unwrap();
        let report = verify("u_3_3", &m, &all_options());
        assert!(report.passed());
        assert!(report.degrees.iter().all(|d| d.ideal_rank == 0));
    }

    #[test]
    fn reports_are_deterministic() {
        let m = fixtures::m1();
        let mut a = verify("m1", &m, &all_options());
        let mut b = verify("m1", &m, &all_options());
        a.timing_ms.clear();
        b.timing_ms.clear();
        assert_eq!(a.to_json(), b.to_json());
    }
}
