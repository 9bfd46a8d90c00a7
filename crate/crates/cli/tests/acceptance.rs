//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use a1h::bilinear::{gw_equal, second_residue, GWClass, GramMatrix, Place};
use a1h::degrees::{bezoutian, fibre_degree, global_degree, scheja_storch_form, SSContext};
use a1h::field::{FieldDescriptor, FieldElement, TPoly};
use a1h::hurwitz::{
    df_expression, real_critical_report, rh_verify, rh_verify_scaled, tame_branch_index, Locus, RHReport,
};
use a1h::linalg;
use a1h::poly::{Poly, RationalFunc};
use a1h_cli::expr::parse_expression;
use a1h_cli::report::RhJson;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------- random inputs ----------

fn random_elem(k: &FieldDescriptor, rng: &mut impl Rng) -> FieldElement {
    match k {
        FieldDescriptor::Rationals => k.div(&k.from_i64(rng.gen_range(-9..=9)), &k.from_i64(rng.gen_range(1..=5))).unwrap(),
        FieldDescriptor::PrimeField(p) => k.from_i64(rng.gen_range(0..*p as i64)),
        FieldDescriptor::RationalFunctionField(p) => {
            let num = TPoly::from_coeffs((0..=rng.gen_range(0..=2)).map(|_| rng.gen_range(0..*p)).collect());
            let den = TPoly::from_coeffs(vec![rng.gen_range(0..*p), 1]);
            k.function(num, if rng.gen_bool(0.5) { den } else { TPoly::constant(1, *p) }).unwrap()
        }
        FieldDescriptor::QuotientExtension(_) => unreachable!(),
    }
}

fn random_nonzero(k: &FieldDescriptor, rng: &mut impl Rng) -> FieldElement {
    loop {
        let a = random_elem(k, rng);
        if !k.is_zero(&a) {
            return a;
        }
    }
}

/// Over Q map coefficients are small integers: canonical classes factor
/// discriminant-sized integers.
fn map_coeff(k: &FieldDescriptor, rng: &mut impl Rng) -> FieldElement {
    match k {
        FieldDescriptor::Rationals => k.from_i64(rng.gen_range(-3..=3)),
        _ => random_elem(k, rng),
    }
}

fn map_poly(k: &FieldDescriptor, deg: usize, monic: bool, rng: &mut impl Rng) -> Poly {
    let mut c: Vec<_> = (0..deg).map(|_| map_coeff(k, rng)).collect();
    let lead = if monic {
        k.one()
    } else {
        loop {
            let a = map_coeff(k, rng);
            if !k.is_zero(&a) {
                break a;
            }
        }
    };
    c.push(lead);
    Poly::new(k, c, 'y')
}

fn random_map(k: &FieldDescriptor, max_deg: usize, separable: bool, rng: &mut impl Rng) -> RationalFunc {
    loop {
        let num = map_poly(k, rng.gen_range(0..=max_deg), false, rng);
        let den = map_poly(k, rng.gen_range(0..=max_deg), true, rng);
        let f = RationalFunc::new(num, den).unwrap();
        if f.is_constant() {
            continue;
        }
        let w = &(&f.num().derivative() * f.den()) - &(f.num() * &f.den().derivative());
        if !separable || !w.is_zero() {
            return f;
        }
    }
}

fn random_form(k: &FieldDescriptor, rng: &mut impl Rng) -> GramMatrix {
    loop {
        let n = rng.gen_range(1..=4);
        let mut m = vec![vec![k.zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let a = random_elem(k, rng);
                m[i][j] = a.clone();
                m[j][i] = a;
            }
        }
        let g = GramMatrix::new(k, m).unwrap();
        if g.is_nondegenerate() {
            return g;
        }
    }
}

fn random_invertible(k: &FieldDescriptor, n: usize, rng: &mut impl Rng) -> Vec<Vec<FieldElement>> {
    loop {
        let m: Vec<Vec<_>> = (0..n).map(|_| (0..n).map(|_| random_elem(k, rng)).collect()).collect();
        if !k.is_zero(&linalg::det(k, &m)) {
            return m;
        }
    }
}

fn h_plus(k: &FieldDescriptor, n: usize, unit: Option<i64>) -> GWClass {
    let h = GWClass::hyperbolic(k, n);
    match unit {
        Some(u) => h.add(&GWClass::unit(k, &k.from_i64(u)).unwrap()).unwrap(),
        None => h,
    }
}

fn rank_sum(r: &RHReport) -> usize {
    r.clusters.iter().map(|c| c.multiplicity * c.residue_degree).sum()
}

// ---------- criteria ----------

fn saito() -> Outcome {
    let mut times = Vec::new();
    for p in [3usize, 5, 7, 11] {
        let start = Instant::now();
        let k = FieldDescriptor::RationalFunctionField(p as u64);
        let f = parse_expression(&format!("(t - y^{p})/y"), &k).unwrap();
        let r = rh_verify(&f).map_err(|e| format!("p = {p}: {e}"))?;
        let pi = parse_expression(&format!("y^{p} - t"), &k).unwrap().num().clone();
        ensure!(r.clusters.len() == 2, "p = {p}: {} clusters", r.clusters.len());
        let at_pi = r.clusters.iter().find(|c| c.locus == Locus::Finite(pi.clone())).ok_or(format!("p = {p}: no cluster at y^p - t"))?;
        let at_inf = r.clusters.iter().find(|c| c.locus == Locus::AtInfinity).ok_or(format!("p = {p}: no cluster at infinity"))?;
        let want_pi = h_plus(&k, (p - 1) / 2, Some(1));
        let want_inf = h_plus(&k, (p - 3) / 2, Some(-1));
        let got_pi = at_pi.local_index.clone().unwrap();
        let got_inf = at_inf.local_index.clone().unwrap();
        ensure!(got_pi == want_pi && gw_equal(&got_pi, &want_pi).unwrap(), "p = {p}: index at y^p - t is {got_pi}, want {want_pi}");
        ensure!(got_inf == want_inf && gw_equal(&got_inf, &want_inf).unwrap(), "p = {p}: index at infinity is {got_inf}, want {want_inf}");
        ensure!(r.total == GWClass::hyperbolic(&k, p - 1), "p = {p}: total {}", r.total);
        ensure!(r.verdict && r.rank_check.pass, "p = {p}: verdict {}", r.verdict);
        if p == 3 {
            let y3t = parse_expression("y^3 - t", &k).unwrap().num().clone();
            let b = bezoutian(&y3t, &Poly::x(&k, 'y').pow(2)).unwrap();
            let (z, t, one) = (k.zero(), k.t().unwrap(), k.one());
            let want = vec![vec![z.clone(), t.clone(), z.clone()], vec![t, z.clone(), z.clone()], vec![z.clone(), z, one]];
            ensure!(b.entries() == &want, "Bezoutian {:?}", b.entries());
            let o = a1h_cli::run(["a1h", "bezout", "--field", "Fpt:3", "y^3 - t", "y^2", "--json"], None);
            let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
            ensure!(
                v["matrix"] == serde_json::json!([["0", "t", "0"], ["t", "0", "0"], ["0", "0", "1"]]),
                "rendered Bezoutian {}",
                v["matrix"]
            );
        }
        let el = start.elapsed();
        ensure!(el < Duration::from_secs(5), "p = {p} took {el:?}");
        times.push(format!("p={p} {:.2}s", el.as_secs_f64()));
    }
    Ok(times.join(", "))
}

fn artin_schreier() -> Outcome {
    for p in [3usize, 5, 7] {
        let k = FieldDescriptor::PrimeField(p as u64);
        let f = parse_expression(&format!("y^{p} - y"), &k).unwrap();
        let r = rh_verify(&f).map_err(|e| format!("p = {p}: {e}"))?;
        ensure!(r.clusters.len() == 1 && r.clusters[0].locus == Locus::AtInfinity, "p = {p}: clusters {:?}", r.clusters);
        let c = &r.clusters[0];
        ensure!(c.multiplicity == 2 * p - 2, "p = {p}: multiplicity {}", c.multiplicity);
        let expr = df_expression(&f, c.chart).unwrap();
        let want_expr = parse_expression(&format!("-v^{}/(v^{} - 1)^2", 2 * p - 2, p - 1), &k).unwrap();
        ensure!(expr == want_expr, "p = {p}: chart expression {expr}");
        let idx = c.local_index.clone().unwrap();
        ensure!(idx == GWClass::hyperbolic(&k, p - 1), "p = {p}: index {idx}");
        ensure!(r.total == GWClass::hyperbolic(&k, p - 1) && r.verdict, "p = {p}: total {}", r.total);
        ensure!(r.notes.iter().any(|n| n.contains("(p-1)/2")), "p = {p}: discrepancy not noted");

        // oracle: the form of -v^{2p-2} on k[v]/(v^{2p-2}) is -1 on the anti-diagonal,
        // an orthogonal sum of p-1 hyperbolic planes
        let n = 2 * p - 2;
        let germ = Poly::monomial(&k, k.from_i64(-1), n, 'v');
        let g = scheja_storch_form(&SSContext::new(germ, Poly::x(&k, 'v').pow(n)).unwrap()).unwrap();
        for a in 0..n {
            for b in 0..n {
                let want = if a + b == n - 1 { k.from_i64(-1) } else { k.zero() };
                ensure!(g.get(a, b) == &want, "p = {p}: Gram[{a}][{b}] = {:?}", g.get(a, b));
            }
        }
    }
    Ok("index (p-1)h at infinity for p = 3, 5, 7".into())
}

fn random_theorem() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xa1);
    let plan = [
        (FieldDescriptor::PrimeField(3), 50),
        (FieldDescriptor::PrimeField(5), 50),
        (FieldDescriptor::PrimeField(7), 50),
        (FieldDescriptor::Rationals, 25),
    ];
    let mut count = 0;
    for (k, n) in plan {
        for _ in 0..n {
            let f = random_map(&k, 6, true, &mut rng);
            let r = rh_verify(&f).map_err(|e| format!("{f} over {k}: {e}"))?;
            let d = f.map_degree();
            ensure!(r.verdict, "{f} over {k}: total {} want {}", r.total, r.expected);
            ensure!(rank_sum(&r) == 2 * d - 2 && r.rank_check.pass, "{f} over {k}: rank {}", rank_sum(&r));
            if k == FieldDescriptor::Rationals {
                let s = r.signature_check.as_ref().ok_or("no signature check over Q")?;
                ensure!(s.got == 0 && s.pass, "{f}: signature {}", s.got);
            }
            count += 1;
        }
    }
    let el = start.elapsed();
    ensure!(el < Duration::from_secs(60), "took {el:?}");
    Ok(format!("{count} maps in {:.1}s", el.as_secs_f64()))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb2);
    let plan = [
        (FieldDescriptor::PrimeField(3), 5),
        (FieldDescriptor::PrimeField(5), 5),
        (FieldDescriptor::PrimeField(7), 5),
        (FieldDescriptor::Rationals, 5),
        (FieldDescriptor::RationalFunctionField(3), 3),
    ];
    for (k, deg) in &plan {
        for _ in 0..100 {
            let f = random_map(k, *deg, false, &mut rng);
            let bez = global_degree(&f).map_err(|e| format!("{f} over {k}: {e}"))?;
            let fib = fibre_degree(&f).map_err(|e| format!("{f} over {k}: {e}"))?;
            ensure!(gw_equal(&bez, &fib).unwrap(), "{f} over {k}: Bezoutian {bez}, clusters {fib}");
        }
    }
    Ok(format!("100 maps over each of {} fields", plan.len()))
}

fn alpha_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc3);
    let fpt = FieldDescriptor::RationalFunctionField(3);
    let t = fpt.t().unwrap();
    let alphas = |k: &FieldDescriptor, rng: &mut ChaCha8Rng| -> Vec<FieldElement> {
        match k {
            FieldDescriptor::Rationals => [(-1, 1), (2, 1), (3, 1), (-5, 1), (1, 7)]
                .iter()
                .map(|&(a, b)| k.div(&k.from_i64(a), &k.from_i64(b)).unwrap())
                .collect(),
            FieldDescriptor::RationalFunctionField(_) => vec![
                t.clone(),
                k.from_i64(-1),
                k.add(&t, &k.one()),
                k.mul(&k.from_i64(2), &k.mul(&t, &t)),
                k.inv(&t).unwrap(),
            ],
            _ => (0..5).map(|_| random_nonzero(k, rng)).collect(),
        }
    };
    let plan = [
        (FieldDescriptor::PrimeField(5), 5),
        (FieldDescriptor::PrimeField(7), 5),
        (FieldDescriptor::Rationals, 4),
        (fpt.clone(), 3),
    ];
    for (k, deg) in &plan {
        for _ in 0..10 {
            let f = random_map(k, *deg, true, &mut rng);
            let base = rh_verify(&f).unwrap().total;
            for a in alphas(k, &mut rng) {
                let scaled = rh_verify_scaled(&f, &a).map_err(|e| format!("{f}: {e}"))?.total;
                ensure!(gw_equal(&base, &scaled).unwrap(), "{f} over {k}, alpha {}: {scaled} vs {base}", k.render(&a));
            }
        }
    }
    Ok("10 maps x 5 units over each of F_5, F_7, Q, F_3(t)".into())
}

fn tame() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd4);
    let mut count = 0;
    for k in [FieldDescriptor::PrimeField(5), FieldDescriptor::PrimeField(7), FieldDescriptor::Rationals] {
        let p = k.characteristic() as usize;
        let emax = if p == 0 { 6 } else { p - 1 };
        for _ in 0..10 {
            let e = rng.gen_range(2..=emax);
            let a = random_nonzero(&k, &mut rng);
            let r = random_elem(&k, &mut rng);
            let c = random_elem(&k, &mut rng);
            let lin = Poly::new(&k, vec![k.neg(&r), k.one()], 'y');
            let f = RationalFunc::from_poly(&lin.pow(e).scale(&a) + &Poly::constant(&k, c, 'y'));
            let rep = rh_verify(&f).map_err(|err| format!("{f}: {err}"))?;
            let at_r = rep.clusters.iter().find(|cl| cl.locus == Locus::Finite(lin.clone())).ok_or(format!("{f}: no cluster at r"))?;
            let got = at_r.local_index.clone().unwrap();
            let want = tame_branch_index(&k, &a, e).unwrap();
            ensure!(gw_equal(&got, &want).unwrap(), "{f} over {k}: index {got}, tame {want}");
            count += 1;
        }
    }
    Ok(format!("{count} maps"))
}

fn gw_decision() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe5);
    let fields = [
        FieldDescriptor::PrimeField(3),
        FieldDescriptor::PrimeField(5),
        FieldDescriptor::PrimeField(7),
        FieldDescriptor::Rationals,
        FieldDescriptor::RationalFunctionField(3),
        FieldDescriptor::RationalFunctionField(5),
    ];
    for k in &fields {
        for _ in 0..200 {
            let g = random_form(k, &mut rng);
            let p = random_invertible(k, g.dim(), &mut rng);
            let h = g.congruent(&p);
            let (a, b) = (g.class().unwrap(), h.class().unwrap());
            ensure!(gw_equal(&a, &b).unwrap(), "over {k}: {a} vs {b}");
        }
    }
    for p in [3u64, 5, 7] {
        let k = FieldDescriptor::RationalFunctionField(p);
        let t = k.t().unwrap();
        let one = GWClass::unit(&k, &k.one()).unwrap();
        let ut = GWClass::unit(&k, &t).unwrap();
        ensure!(!gw_equal(&one, &ut).unwrap(), "<1> = <t> over F_{p}(t)");
        let fp = FieldDescriptor::PrimeField(p);
        let res = second_residue(&ut, &Place::Finite(Poly::x(&fp, 't'))).unwrap();
        ensure!(res == GWClass::unit(&fp, &fp.one()).unwrap(), "second residue of <t> at t over F_{p}: {res}");
    }
    let f5 = FieldDescriptor::PrimeField(5);
    ensure!(!gw_equal(&h_plus(&f5, 0, Some(1)), &h_plus(&f5, 0, Some(2))).unwrap(), "<1> = <2> over F_5");
    let q = FieldDescriptor::Rationals;
    let two = h_plus(&q, 0, Some(1)).add(&h_plus(&q, 0, Some(1))).unwrap();
    ensure!(!gw_equal(&two, &GWClass::hyperbolic(&q, 1)).unwrap(), "<1> + <1> = h over Q");
    Ok(format!("200 congruent pairs over each of {} fields; 5 separations; residues", fields.len()))
}

/// `f' = n·Π (x − r_i)^{e_i}` with `n = deg f`, integrated to a monic `f`.
fn monic_with_rational_critical_points(rng: &mut impl Rng) -> (Poly, Vec<(i64, usize)>) {
    let q = FieldDescriptor::Rationals;
    let n = rng.gen_range(2..=6usize);
    let mut left = n - 1;
    let mut roots: Vec<(i64, usize)> = Vec::new();
    while left > 0 {
        let r = rng.gen_range(-5..=5i64);
        if roots.iter().any(|&(s, _)| s == r) {
            continue;
        }
        let e = rng.gen_range(1..=left);
        roots.push((r, e));
        left -= e;
    }
    let mut df = Poly::constant(&q, q.from_i64(n as i64), 'x');
    for &(r, e) in &roots {
        df = &df * &Poly::from_i64s(&q, &[-r, 1], 'x').pow(e);
    }
    let mut c = vec![q.from_i64(rng.gen_range(-9..=9))];
    for (i, a) in df.coeffs().iter().enumerate() {
        c.push(q.div(a, &q.from_i64(i as i64 + 1)).unwrap());
    }
    (Poly::new(&q, c, 'x'), roots)
}

/// #minima − #maxima by the sign of `f'` around each root of odd order.
fn extrema_count(n: usize, roots: &[(i64, usize)]) -> i64 {
    roots
        .iter()
        .filter(|&&(_, e)| e % 2 == 1)
        .map(|&(r, _)| {
            let mut sign = 1i64 * n as i64;
            for &(s, e) in roots {
                if s != r && e % 2 == 1 && r < s {
                    sign = -sign;
                }
            }
            if sign > 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

fn real_specialization() -> Outcome {
    let q = FieldDescriptor::Rationals;
    for (text, want) in [("x^2", 1), ("x^3 - 3*x", 0), ("x^3", 0), ("x^4 - 2*x^2", 1)] {
        let f = parse_expression(text, &q).unwrap().num().clone();
        let r = real_critical_report(&f).map_err(|e| format!("{text}: {e}"))?;
        ensure!(r.pass && r.signature_finite == want, "{text}: {r:?}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xf6);
    for _ in 0..20 {
        let (f, roots) = monic_with_rational_critical_points(&mut rng);
        let r = real_critical_report(&f).map_err(|e| format!("{f}: {e}"))?;
        let n = f.deg().unwrap();
        ensure!(r.pass, "{f}: {r:?}");
        ensure!(r.signature_finite == extrema_count(n, &roots), "{f}: signature {} vs sign count", r.signature_finite);
    }
    Ok("4 named + 20 random polynomials".into())
}

fn goldens() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str]); 3] = [
        ("rh_saito_p3.json", &["rh", "--field", "Fpt:3", "(t - y^3)/y", "--json"]),
        ("rh_artin_schreier_p3.json", &["rh", "--field", "Fp:3", "y^3 - y", "--json"]),
        ("bezout_saito_p3.json", &["bezout", "--field", "Fpt:3", "y^3 - t", "y^2", "--json"]),
    ];
    let rh_keys = [
        "field", "map", "degree", "separable", "clusters", "total", "expected", "verdict", "rank_check", "signature_check",
    ];
    let cluster_keys = ["chart", "pi", "multiplicity", "residue_degree", "index"];
    for (file, args) in cases {
        let golden = std::fs::read_to_string(dir.join(file)).map_err(|e| format!("{file}: {e}"))?;
        let first = a1h_cli::run(std::iter::once("a1h").chain(args.iter().copied()), None);
        let second = a1h_cli::run(std::iter::once("a1h").chain(args.iter().copied()), None);
        ensure!(first.code == 0, "{file}: exit {}", first.code);
        ensure!(first.stdout == golden, "{file}: output differs from golden:\n{}", first.stdout);
        ensure!(second.stdout == golden, "{file}: second run differs");
        let out = Command::new(env!("CARGO_BIN_EXE_a1h")).args(args).env_remove("A1H_SEED").output().unwrap();
        ensure!(out.stdout == golden.as_bytes(), "{file}: binary output differs");
        if file.starts_with("rh_") {
            let parsed: RhJson = serde_json::from_str(&golden).map_err(|e| format!("{file}: {e}"))?;
            ensure!(parsed.verdict, "{file}: verdict false");
            let v: serde_json::Value = serde_json::from_str(&golden).unwrap();
            let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
            ensure!(sorted_eq(&keys, &rh_keys), "{file}: keys {keys:?}");
            for c in v["clusters"].as_array().unwrap() {
                let ck: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
                ensure!(sorted_eq(&ck, &cluster_keys), "{file}: cluster keys {ck:?}");
                ensure!(c["index"]["hyperbolic"].is_u64() && c["index"]["residual"].is_array(), "{file}: gwclass shape");
            }
        }
    }
    Ok("3 goldens byte-identical (in-process twice, binary once)".into())
}

fn sorted_eq(a: &[&str], b: &[&str]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 Saito map over F_p(t), p = 3, 5, 7, 11", saito),
        ("2 Artin-Schreier map y^p - y, p = 3, 5, 7", artin_schreier),
        ("3 Riemann-Hurwitz at random over F_3, F_5, F_7, Q", random_theorem),
        ("4 Bezoutian equals sum of cluster classes", oracle_equivalence),
        ("5 total is independent of the trivialization", alpha_invariance),
        ("6 tame points match the branch index", tame),
        ("7 GW equality decisions", gw_decision),
        ("8 real signature specialization", real_specialization),
        ("9 CLI goldens are byte-stable", goldens),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {name} [{detail}] ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
