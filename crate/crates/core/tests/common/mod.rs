#![allow(dead_code)]

pub mod oracle;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spbw_core::catalog;
use spbw_core::{Algebra, CoeffElem, ExponentVector, NCPolynomial, Term};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Nonzero rational with small numerator and denominator.
pub fn small_rational(rng: &mut impl Rng) -> BigRational {
    let mut p = rng.gen_range(-4..=4);
    if p == 0 {
        p = 1;
    }
    ratio(p, rng.gen_range(1..=3))
}

/// Random element of `ℚ[t_1..t_m]` with at most `terms` terms of degree `≤ deg`.
pub fn small_coeff(rng: &mut impl Rng, m: usize, terms: usize, deg: u32) -> CoeffElem {
    if m == 0 {
        return CoeffElem::from_rational(small_rational(rng));
    }
    let k = rng.gen_range(1..=terms);
    let mut acc = CoeffElem::zero();
    for _ in 0..k {
        acc = &acc + &CoeffElem::monomial(small_rational(rng), random_exponents(rng, m, deg));
    }
    if acc.is_zero() {
        CoeffElem::one()
    } else {
        acc
    }
}

pub fn random_exponents(rng: &mut impl Rng, n: usize, deg: u32) -> Vec<u32> {
    let total = rng.gen_range(0..=deg);
    let mut v = vec![0u32; n];
    for _ in 0..total {
        v[rng.gen_range(0..n)] += 1;
    }
    v
}

pub fn random_monomial(rng: &mut impl Rng, n: usize, deg: u32) -> ExponentVector {
    ExponentVector::new(random_exponents(rng, n, deg))
}

/// Random polynomial with at most `terms` terms, exponent degree `≤ deg` and
/// coefficient degree `≤ cdeg`. May be zero.
pub fn random_poly(
    rng: &mut impl Rng,
    alg: &Algebra,
    terms: usize,
    deg: u32,
    cdeg: u32,
) -> NCPolynomial {
    let m = alg.ring().ngens();
    let k = rng.gen_range(1..=terms);
    let ts: Vec<Term> = (0..k)
        .map(|_| {
            Term::new(
                small_coeff(rng, m, 2, cdeg),
                random_monomial(rng, alg.nvars(), deg),
            )
        })
        .collect();
    NCPolynomial::from_terms(alg, ts)
}

pub fn nonzero_poly(
    rng: &mut impl Rng,
    alg: &Algebra,
    terms: usize,
    deg: u32,
    cdeg: u32,
) -> NCPolynomial {
    loop {
        let f = random_poly(rng, alg, terms, deg, cdeg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// The six presentations the suites run over.
pub fn corpus() -> Vec<(&'static str, Algebra)> {
    vec![
        ("diffusion", catalog::diffusion()),
        ("r-algebra", catalog::r_algebra()),
        ("quantum-plane", catalog::quantum_plane()),
        ("additive-weyl", catalog::additive_weyl()),
        ("commutative-xyz", catalog::commutative(&["x", "y", "z"])),
        ("weyl", catalog::weyl()),
    ]
}

/// The corpus with the `μ = 1/2` algebra swapped for its confluent `μ = 1`
/// sibling.
pub fn confluent_corpus() -> Vec<(&'static str, Algebra)> {
    corpus()
        .into_iter()
        .map(|(name, alg)| {
            if name == "r-algebra" {
                let pres = catalog::r_algebra_presentation_with((2, 3), (1, 1));
                ("r-algebra(mu=1)", Algebra::with_deglex(pres).unwrap())
            } else {
                (name, alg)
            }
        })
        .collect()
}

/// Parses a polynomial written with `*`, `^`, `+`, `-` and rational constants,
/// where each summand may start with a parenthesised coefficient, e.g.
/// `(1/2*x1*x2^3)*D1^2 - (x1^2*x2)*D2`.
pub fn poly(alg: &Algebra, text: &str) -> NCPolynomial {
    let vars = alg.presentation().var_names().to_vec();
    let gens = alg.ring().gen_names().to_vec();
    let mut acc = NCPolynomial::zero(alg);
    for (sign, summand) in split_top(text) {
        let (coeff_text, mono_text) = match summand.strip_prefix('(') {
            Some(rest) => {
                let close = rest.find(')').expect("balanced parentheses");
                let tail = rest[close + 1..].trim_start_matches('*');
                (rest[..close].to_string(), tail.to_string())
            }
            None => (String::new(), summand.clone()),
        };
        let mut c = if coeff_text.is_empty() {
            CoeffElem::one()
        } else {
            coeff_expr(&gens, &coeff_text)
        };
        let mut exp = vec![0u32; vars.len()];
        for factor in mono_text.split('*').filter(|s| !s.is_empty()) {
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => (n, p.parse::<u32>().unwrap()),
                None => (factor, 1),
            };
            if let Some(i) = vars.iter().position(|v| v == name) {
                exp[i] += power;
            } else if let Some(k) = gens.iter().position(|g| g == name) {
                c = &c * &CoeffElem::generator(k).pow(power);
            } else if let Some((p, q)) = name.split_once('/') {
                c = c.scale(&ratio(p.parse().unwrap(), q.parse().unwrap()));
            } else {
                c = c.scale(&ratio(name.parse().unwrap(), 1));
            }
        }
        if sign < 0 {
            c = -c;
        }
        acc = &acc + &NCPolynomial::monomial(alg, c, ExponentVector::new(exp));
    }
    acc
}

fn coeff_expr(gens: &[String], text: &str) -> CoeffElem {
    let mut acc = CoeffElem::zero();
    for (sign, summand) in split_top(text) {
        let mut c = CoeffElem::one();
        for factor in summand.split('*').filter(|s| !s.is_empty()) {
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => (n, p.parse::<u32>().unwrap()),
                None => (factor, 1),
            };
            if let Some(k) = gens.iter().position(|g| g == name) {
                c = &c * &CoeffElem::generator(k).pow(power);
            } else if let Some((p, q)) = name.split_once('/') {
                c = c.scale(&ratio(p.parse().unwrap(), q.parse().unwrap()));
            } else {
                c = c.scale(&ratio(name.parse().unwrap(), 1));
            }
        }
        if sign < 0 {
            c = -c;
        }
        acc = &acc + &c;
    }
    acc
}

/// Splits on top-level `+`/`-`, returning `(sign, summand)` pairs.
fn split_top(text: &str) -> Vec<(i32, String)> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut sign = 1;
    let mut cur = String::new();
    for ch in text.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.is_empty() {
                    out.push((sign, std::mem::take(&mut cur)));
                }
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        out.push((sign, cur));
    }
    out
}

/// Generators of left ideals whose bases the Gröbner suites examine. All of
/// them are proper ideals.
pub fn ideal_corpus() -> Vec<(&'static str, Algebra, Vec<&'static str>)> {
    let d = catalog::diffusion();
    let q = catalog::quantum_plane();
    let a = catalog::additive_weyl();
    let c = catalog::commutative(&["x", "y", "z"]);
    let w = catalog::weyl();
    let r = catalog::r_algebra();
    vec![
        (
            "diffusion/division",
            d.clone(),
            vec!["(x1*x2)*D1*D2", "(x2)*D1", "(x1)*D2"],
        ),
        ("diffusion/a", d.clone(), vec!["D1^2 + (x1)", "(x2)*D2 - 1"]),
        ("diffusion/b", d, vec!["D1*D2 + D1", "D2^2 - (x2)"]),
        ("r-algebra/a", r, vec!["(x)*y*w + z", "(x^2)*z*w + y"]),
        ("quantum-plane/a", q.clone(), vec!["x^2*y - x", "x*y^2 + y"]),
        ("quantum-plane/b", q, vec!["x^3 - y^2", "x*y + y"]),
        ("additive-weyl/a", a.clone(), vec!["y^2 + (x)*y", "(x^2)*y"]),
        ("additive-weyl/b", a, vec!["(x)*y^2 + y", "(x^2)*y"]),
        ("commutative-xyz/a", c.clone(), vec!["x^2 - y", "x^3 - z"]),
        (
            "commutative-xyz/b",
            c,
            vec!["x*y - z", "y*z - x", "x*z - y"],
        ),
        ("weyl/a", w.clone(), vec!["t*x^2 + x", "x^3"]),
        ("weyl/b", w, vec!["t^2*x - x", "t*x^2 + 2*x"]),
    ]
}

/// A random left combination `Σ a_i g_i` with `deg a_i ≤ 2`.
pub fn random_combination(rng: &mut impl Rng, gens: &[NCPolynomial]) -> NCPolynomial {
    let alg = gens[0].algebra();
    let cdeg = if alg.ring().ngens() == 0 { 0 } else { 1 };
    let mut acc = NCPolynomial::zero(alg);
    for g in gens {
        let a = random_poly(rng, alg, 3, 2, cdeg);
        acc = &acc + &(&a * g);
    }
    acc
}
