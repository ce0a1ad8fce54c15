//! Acceptance gate: runs every criterion, prints one
//! `criterion <k>: PASS|FAIL ...` line each, and exits nonzero if any
//! criterion fails. Arguments filter criteria by name substring.

use std::collections::BTreeSet;

use wlc_cli::{cmd_lc, cmd_wlc, divide, ReportFormat};
use wlc_core::dynamics::{random_map_from, space_size};
use wlc_core::oracle::MAX_CANDIDATES;
use wlc_core::poly::{poly_divides, poly_order};
use wlc_core::sampling::{
    random_matrix, random_nonsingular, random_periodic_sequence, random_recurrent_sequence,
    random_vector,
};
use wlc_core::{
    apply_map, berlekamp_massey, block_hankel, component_minpoly_lcm, compute_wlc,
    cycle_walk_inverse, euclid_divide, exhaustive_scalar_minpoly, hankel_scalar_minpoly,
    independent_matrix_minpoly, inverse, local_inverse_from_matrix_minpoly, local_invert,
    matpoly_det, Field, Matrix, MatrixPoly, ScalarPoly, Side, SplitMix64, VectorSequence,
};
use wlc_validation::Gate;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/tests/data");

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{DATA}/{name}")).unwrap()
}

fn kv(text: &str, key: &str) -> Option<String> {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")).map(str::to_string))
}

fn seq(text: &str) -> VectorSequence {
    wlc_core::formats::parse_sequence(text).unwrap()
}

fn desc(c: &[i64]) -> ScalarPoly {
    ScalarPoly::from_descending(Field::gf2(), c)
}

fn criterion_1_triple7() -> Gate {
    let mut g = Gate::new(1, "period-7 triple sequence", 1);
    let text = data("triple7.seq");
    let lc = cmd_lc(&text).unwrap().stdout;
    g.check(kv(&lc, "lc").as_deref() == Some("7"), format!("lc: {lc:?}"));
    g.check(
        kv(&lc, "minpoly").as_deref() == Some("1,0,0,0,0,0,0,1"),
        "m(X) = X^7 + 1",
    );

    let v = seq(&text);
    let components: BTreeSet<String> = (0..v.dim())
        .map(|c| {
            let s = v.component(c, 14).unwrap();
            berlekamp_massey(v.field(), &s).to_string()
        })
        .collect();
    let stated: BTreeSet<String> = [
        desc(&[1, 1, 1, 1, 1, 1, 1]),
        desc(&[1, 0, 0, 0, 0, 0, 0, 1]),
    ]
    .iter()
    .map(ScalarPoly::to_string)
    .collect();
    g.check(
        components == stated,
        format!("component minimal polynomials are {components:?}, stated {stated:?}"),
    );

    let w = cmd_wlc(&text, ReportFormat::Kv).unwrap().stdout;
    g.check(
        kv(&w, "divisible").as_deref() == Some("false"),
        "divisible=false",
    );
    g.check(
        kv(&w, "nontrivial").as_deref() == Some("false"),
        "nontrivial=false",
    );
    g
}

fn criterion_2_pair_deficient() -> Gate {
    let mut g = Gate::new(2, "rank-deficient pair sequence", 1);
    let text = data("pair_deficient.seq");
    let w = cmd_wlc(&text, ReportFormat::Kv).unwrap().stdout;
    let lc = kv(&w, "lc");
    g.check(
        lc.as_deref() == Some("6"),
        format!("lc=6 (computed lc={})", lc.unwrap_or_default()),
    );
    let displayed = Matrix::from_rows(
        Field::gf2(),
        &[
            [1i64, 0, 0, 0, 1, 0],
            [0, 0, 1, 1, 0, 0],
            [0, 0, 0, 1, 0, 1],
            [0, 1, 1, 0, 0, 0],
            [0, 0, 1, 0, 1, 0],
            [1, 1, 0, 0, 0, 0],
        ],
    )
    .unwrap();
    let h = block_hankel(&seq(&text), 3).unwrap();
    g.check(h == displayed, "block Hankel H~(6) entrywise");
    g.check(h.rank() == 5, format!("rank H~(6) = {}", h.rank()));
    g.check(kv(&w, "block_rank").as_deref() == Some("5"), "block_rank=5");
    g.check(
        kv(&w, "nontrivial").as_deref() == Some("false"),
        "nontrivial=false",
    );
    g
}

fn criterion_3_pair_wlc3() -> Gate {
    let mut g = Gate::new(3, "pair sequence with wlc 3", 1);
    let text = data("pair_wlc3.seq");
    let v = seq(&text);
    let r = compute_wlc(&v).unwrap();
    g.check(r.lc == 6, format!("lc={}", r.lc));
    g.check(r.wlc == Some(3), format!("wlc={:?}", r.wlc));
    let f = Field::gf2();
    let m = |rows: [[i64; 2]; 2]| Matrix::from_rows(f, &rows).unwrap();
    let expected = [
        m([[0, 1], [1, 1]]),
        m([[0, 0], [0, 1]]),
        m([[1, 1], [0, 1]]),
    ];
    g.check(r.coefficients() == expected, "A0, A1, A2");

    let (q, rem) = divide(
        &data("x6_plus_1.mpoly"),
        &data("pair_wlc3_m.mpoly"),
        Side::Right,
    )
    .unwrap();
    g.check(q.coeff(2) == m([[1, 1], [0, 1]]), "Q2");
    g.check(q.coeff(1) == m([[1, 0], [0, 0]]), "Q1");
    g.check(q.coeff(0) == m([[1, 1], [1, 0]]), "Q0");
    g.check(rem.is_zero(), "zero remainder");
    // The same division from the computed M(X) rather than the file.
    let target = MatrixPoly::from_scalar(&ScalarPoly::x_pow_minus_one(f, 6), 2);
    let (q2, r2) = euclid_divide(&target, &r.matrix_minpoly, Side::Right).unwrap();
    g.check(q2 == q && r2.is_zero(), "division by the computed M(X)");

    let x = local_inverse_from_matrix_minpoly(&v, &r.matrix_minpoly).unwrap();
    g.check(x.as_slice() == [0, 0], format!("V_-1 = {:?}", x.as_slice()));
    g
}

/// Checks the structural claims for one sequence; returns whether a
/// nontrivial M(X) was present.
fn structure_checks(g: &mut Gate, v: &VectorSequence, label: &str) -> bool {
    let r = compute_wlc(v).unwrap();
    let n = v.dim();
    let period = v.period().unwrap();
    let f = v.field();
    if let Some(w) = r.wlc {
        g.check(w <= r.lc, format!("{label}: wlc > lc"));
    }
    if !r.nontrivial {
        return false;
    }
    let mp = &r.matrix_minpoly;
    let w = r.wlc.unwrap();
    g.check(n * w == r.lc, format!("{label}: n*wlc != lc"));
    g.check(
        inverse(&mp.coeff(0)).is_ok(),
        format!("{label}: A0 singular"),
    );
    let det = matpoly_det(mp);
    g.check(
        poly_divides(&det, &r.scalar_minpoly.pow(n as u32)),
        format!("{label}: det M does not divide m^n"),
    );
    g.check(
        det.degree().unwrap_or(0) <= n * r.lc,
        format!("{label}: deg det M > n*lc"),
    );
    match poly_order(&det, n * period) {
        Ok(ord) => g.check(
            (n * period).is_multiple_of(ord),
            format!("{label}: ord det M = {ord}"),
        ),
        Err(e) => g.check(false, format!("{label}: order of det M: {e}")),
    }
    let target = MatrixPoly::from_scalar(&ScalarPoly::x_pow_minus_one(f, period), n);
    for side in [Side::Left, Side::Right] {
        let (_, rem) = euclid_divide(&target, mp, side).unwrap();
        g.check(
            rem.is_zero(),
            format!("{label}: {side:?} remainder nonzero"),
        );
    }
    true
}

fn criterion_4_structure_suite() -> Gate {
    let mut g = Gate::new(4, "structural property suite", 60);
    let mut rng = SplitMix64::new(0x5eed_0004);
    let (mut total, mut nontrivial) = (0usize, 0usize);
    let primes = [2u64, 3, 5];
    while total < 240 {
        let f = Field::new(primes[rng.below(3) as usize]).unwrap();
        let n = 2 + rng.below(3) as usize;
        let v = if total % 2 == 0 {
            let period = 1 + rng.below(256) as usize;
            random_periodic_sequence(&mut rng, f, n, period).unwrap()
        } else {
            let d = 1 + rng.below(4) as usize;
            match random_recurrent_sequence(&mut rng, f, n, d, 256).unwrap() {
                Some(v) => v,
                None => continue,
            }
        };
        let label = format!("p={} n={n} N={}", f.p(), v.period().unwrap());
        total += 1;
        nontrivial += usize::from(structure_checks(&mut g, &v, &label));
    }
    g.note(format!(
        "{total} sequences, {nontrivial} with nontrivial M(X)"
    ));
    g.check(
        nontrivial >= 50,
        format!("only {nontrivial} nontrivial cases"),
    );
    g
}

fn oracle_compare(g: &mut Gate, v: &VectorSequence, label: &str) -> (bool, bool) {
    let hankel = hankel_scalar_minpoly(v).unwrap();
    let bm = component_minpoly_lcm(v).unwrap();
    g.check(hankel == bm, format!("{label}: hankel {hankel} vs bm {bm}"));
    let lc = hankel.degree().unwrap();
    let p = v.field().p() as u64;
    let exhaustive = p
        .checked_pow(lc as u32)
        .is_some_and(|c| c <= MAX_CANDIDATES);
    if exhaustive {
        let ex = exhaustive_scalar_minpoly(v, lc).unwrap();
        g.check(
            hankel == ex,
            format!("{label}: hankel {hankel} vs exhaustive {ex}"),
        );
    }
    let r = compute_wlc(v).unwrap();
    let period = v.period().unwrap();
    let oracle = independent_matrix_minpoly(v, period / v.dim()).unwrap();
    match (&oracle, r.nontrivial) {
        (Some(m), true) => g.check(*m == r.matrix_minpoly, format!("{label}: M(X) differs")),
        (None, false) => {}
        _ => g.check(
            false,
            format!("{label}: verdict {} vs oracle {oracle:?}", r.nontrivial),
        ),
    }
    (exhaustive, r.nontrivial)
}

fn criterion_5_oracle_equivalence() -> Gate {
    let mut g = Gate::new(5, "oracle equivalence", 120);
    let f = Field::gf2();
    let mut grid = 0usize;
    let mut nontrivial = 0usize;
    // Every binary sequence with n*N <= 12.
    for n in 1..=3usize {
        for period in 1..=12 / n {
            let bits = n * period;
            for word in 0u64..(1 << bits) {
                let data: Vec<u32> = (0..bits).map(|i| ((word >> i) & 1) as u32).collect();
                let v = VectorSequence::from_flat(f, n, data, Some(period)).unwrap();
                let label = format!("n={n} N={period} word={word:#x}");
                nontrivial += usize::from(oracle_compare(&mut g, &v, &label).1);
                grid += 1;
            }
        }
    }
    // Random binary sequences filling the rest of N <= 16, n <= 3.
    let mut rng = SplitMix64::new(0x5eed_0005);
    let mut sampled = 0usize;
    for _ in 0..600 {
        let n = 1 + rng.below(3) as usize;
        let period = 1 + rng.below(16) as usize;
        let v = random_periodic_sequence(&mut rng, f, n, period).unwrap();
        let label = format!("random n={n} N={period}");
        nontrivial += usize::from(oracle_compare(&mut g, &v, &label).1);
        sampled += 1;
    }
    // 100 larger instances over p in {2, 3, 5}.
    let mut larger = 0usize;
    let mut exhaustive_larger = 0usize;
    while larger < 100 {
        let f = Field::new([2u64, 3, 5][rng.below(3) as usize]).unwrap();
        let n = 2 + rng.below(2) as usize;
        let period = 17 + rng.below(48) as usize;
        let d = 1 + rng.below(3) as usize;
        let v = if larger.is_multiple_of(2) {
            random_periodic_sequence(&mut rng, f, n, period).unwrap()
        } else {
            match random_recurrent_sequence(&mut rng, f, n, d, 64).unwrap() {
                Some(v) => v,
                None => continue,
            }
        };
        let label = format!("larger p={} n={n} N={}", f.p(), v.period().unwrap());
        let (ex, nt) = oracle_compare(&mut g, &v, &label);
        exhaustive_larger += usize::from(ex);
        nontrivial += usize::from(nt);
        larger += 1;
    }
    g.note(format!(
        "{grid} exhaustive grid, {sampled} sampled N<=16, {larger} larger ({exhaustive_larger} with exhaustive search), {nontrivial} nontrivial"
    ));
    g
}

fn criterion_6_division_round_trip() -> Gate {
    let mut g = Gate::new(6, "division round trip", 30);
    let mut rng = SplitMix64::new(0x5eed_0006);
    let mut cases = 0;
    for p in [2u64, 5] {
        let f = Field::new(p).unwrap();
        for _ in 0..250 {
            let n = 1 + rng.below(4) as usize;
            let dd = rng.below(5) as usize;
            let mut d_blocks: Vec<Matrix> =
                (0..dd).map(|_| random_matrix(&mut rng, f, n, n)).collect();
            d_blocks.push(random_nonsingular(&mut rng, f, n));
            let d = MatrixPoly::new(f, n, d_blocks).unwrap();
            let dq = rng.below(6) as usize;
            let q = MatrixPoly::new(
                f,
                n,
                (0..=dq).map(|_| random_matrix(&mut rng, f, n, n)).collect(),
            )
            .unwrap();
            let r = MatrixPoly::new(
                f,
                n,
                (0..dd).map(|_| random_matrix(&mut rng, f, n, n)).collect(),
            )
            .unwrap();
            let right = q.mul(&d).unwrap().add(&r).unwrap();
            g.check(
                euclid_divide(&right, &d, Side::Right).unwrap() == (q.clone(), r.clone()),
                format!("right division, p={p} n={n} deg D={dd}"),
            );
            let left = d.mul(&q).unwrap().add(&r).unwrap();
            g.check(
                euclid_divide(&left, &d, Side::Left).unwrap() == (q, r),
                format!("left division, p={p} n={n} deg D={dd}"),
            );
            cases += 1;
        }
    }
    g.note(format!("{cases} triples, both sides"));
    g
}

fn criterion_7_end_to_end_inversion() -> Gate {
    let mut g = Gate::new(7, "end-to-end inversion", 60);
    let mut routes = [0usize; 2];
    for (p, n, trials) in [(2u64, 8usize, 100u64), (3, 4, 50)] {
        let f = Field::new(p).unwrap();
        let size = space_size(f, n).unwrap() as usize;
        for seed in 0..trials {
            let mut rng = SplitMix64::new(seed);
            let map = random_map_from(&mut rng, f, n, true).unwrap();
            let y = Matrix::column(f, &random_vector(&mut rng, f, n));
            let label = format!("p={p} n={n} seed={seed}");
            match local_invert(&map, &y, 4 * size) {
                Ok(inv) => {
                    routes[usize::from(inv.route == wlc_core::Route::Scalar)] += 1;
                    g.check(
                        apply_map(&map, &inv.x).unwrap() == y,
                        format!("{label}: F(x) != y"),
                    );
                    let walk = cycle_walk_inverse(&map, &y, size + 1).unwrap();
                    g.check(walk == inv.x, format!("{label}: differs from cycle walk"));
                }
                Err(e) => g.check(false, format!("{label}: {e}")),
            }
        }
    }
    g.note(format!(
        "matrix route {}, scalar route {}",
        routes[0], routes[1]
    ));
    g
}

type Criterion = (&'static str, fn() -> Gate);

const CRITERIA: [Criterion; 7] = [
    ("criterion_1_triple7", criterion_1_triple7),
    ("criterion_2_pair_deficient", criterion_2_pair_deficient),
    ("criterion_3_pair_wlc3", criterion_3_pair_wlc3),
    ("criterion_4_structure_suite", criterion_4_structure_suite),
    (
        "criterion_5_oracle_equivalence",
        criterion_5_oracle_equivalence,
    ),
    (
        "criterion_6_division_round_trip",
        criterion_6_division_round_trip,
    ),
    (
        "criterion_7_end_to_end_inversion",
        criterion_7_end_to_end_inversion,
    ),
];

fn main() {
    let filters: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let (mut passed, mut failed) = (0, 0);
    for (k, (name, run)) in CRITERIA.iter().enumerate() {
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let (pass, line) = match std::panic::catch_unwind(run) {
            Ok(mut gate) => gate.verdict(),
            Err(_) => (false, format!("criterion {}: FAIL {name} panicked", k + 1)),
        };
        println!("{line}");
        if pass {
            passed += 1;
        } else {
            failed += 1;
        }
    }
    println!("acceptance: {passed} passed, {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
