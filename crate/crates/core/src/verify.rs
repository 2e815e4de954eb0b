//! Exhaustive and sweep checks of the numeration systems and both adders.
//!
//! Every check runs against caller-supplied machines, so a corrupted
//! transducer can be verified and its first counterexample reported.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::adders::{add_f_with, add_fc_with};
use crate::complement::{cmp_prec, enumerate_d, is_canonical_fc, rep_fc};
use crate::derivation::{
    check_append0_lemma, derive_z, oracle_translate, step_class, theta, ThetaClass,
};
use crate::fib::{check_identities, fib, val_f, val_fc};
use crate::mealy::{isomorphism_mismatch, MealyMachine};
use crate::word::{w, Digit, Word};
use crate::zeckendorf::{cmp_radix, is_zeckendorf, rep_f};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Longest word length in the exhaustive suites.
    pub depth: usize,
    /// Integer sweeps cover `[-range, range]`, or `[0, 2 * range]` for `ℕ`.
    pub range: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            depth: 8,
            range: 300,
        }
    }
}

#[derive(Clone, Copy)]
pub struct Machines<'a> {
    pub b: &'a MealyMachine,
    pub t: &'a MealyMachine,
}

impl Default for Machines<'static> {
    fn default() -> Self {
        Machines {
            b: crate::adders::berstel(),
            t: crate::adders::modified(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS {} ({} cases)", self.name, self.checked),
            Some(c) => write!(f, "FAIL {}: {c}", self.name),
        }
    }
}

/// Runs `check` on every item and stops at the first failure.
fn first_failure<T>(
    name: &'static str,
    items: impl IntoIterator<Item = T>,
    mut check: impl FnMut(&T) -> Option<String>,
) -> CheckOutcome {
    let mut checked = 0;
    for item in items {
        checked += 1;
        if let Some(c) = check(&item) {
            return CheckOutcome {
                name,
                checked,
                counterexample: Some(c),
            };
        }
    }
    CheckOutcome {
        name,
        checked,
        counterexample: None,
    }
}

fn ternary(max_len: usize) -> impl Iterator<Item = Word> {
    Word::all_up_to(3, max_len)
}

fn nonempty_ternary(max_len: usize) -> impl Iterator<Item = Word> {
    Word::all_up_to(3, max_len).filter(|u| !u.is_empty())
}

fn binary_without_11(max_len: usize) -> impl Iterator<Item = Word> {
    Word::all_up_to(2, max_len).filter(|u| !u.has_factor_11())
}

fn raw(m: &MealyMachine, u: &Word) -> Result<Word, String> {
    m.run_with_final(u).map_err(|e| format!("u={u}: {e}"))
}

fn odd_at_most(n: usize) -> usize {
    if n % 2 == 1 {
        n
    } else {
        n.saturating_sub(1).max(1)
    }
}

pub fn check_fib_identities(k_max: usize) -> CheckOutcome {
    first_failure(
        "Fibonacci identities",
        check_identities(k_max.max(1)),
        |c| (!c.all_hold()).then(|| format!("k={}: {c:?}", c.k)),
    )
}

pub fn check_rep_f_bijection(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let top = 2 * cfg.range.max(0);
    vec![
        first_failure("val_F(rep_F(n)) = n", 0..=top, |&n| {
            let z = rep_f(n).unwrap();
            (z.value() != BigInt::from(n) || !is_zeckendorf(z.as_word()).unwrap())
                .then(|| format!("n={n}: got {z}"))
        }),
        first_failure(
            "rep_F(val_F(z)) = z",
            binary_without_11(cfg.depth).filter(|z| z.first() != Some(Digit::Zero)),
            |z| {
                let back = rep_f(val_f(z)).unwrap();
                (back != *z).then(|| format!("z={z}: got {back}"))
            },
        ),
        first_failure("rep_F increasing", 0..top, |&n| {
            let (a, b) = (rep_f(n).unwrap(), rep_f(n + 1).unwrap());
            (cmp_radix(a.as_word(), b.as_word()) != Ordering::Less)
                .then(|| format!("rep_F({n})={a} not below rep_F({})={b}", n + 1))
        }),
    ]
}

pub fn check_rep_fc_order(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let r = cfg.range.max(0);
    vec![
        first_failure("val_Fc(rep_Fc(n)) = n", -r..=r, |&n| {
            let x = rep_fc(n);
            (x.value() != BigInt::from(n) || !is_canonical_fc(x.as_word()).unwrap())
                .then(|| format!("n={n}: got {x}"))
        }),
        first_failure("rep_Fc increasing for ≺", -r..r, |&n| {
            let (a, b) = (rep_fc(n), rep_fc(n + 1));
            (cmp_prec(a.as_word(), b.as_word()).unwrap() != Ordering::Less)
                .then(|| format!("rep_Fc({n})={a} not below rep_Fc({})={b}", n + 1))
        }),
        {
            let words = enumerate_d(odd_at_most(cfg.depth)).unwrap();
            let start = words.first().map(|x| x.value()).unwrap_or_default();
            first_failure(
                "D is an interval under ≺",
                words.iter().enumerate(),
                |(i, x)| {
                    let expected = &start + *i;
                    (x.value() != expected).then(|| {
                        format!("position {i}: {x} has value {} not {expected}", x.value())
                    })
                },
            )
        },
    ]
}

pub fn check_neutral_prefixes(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let p000 = w("000");
    let p0 = w("0");
    let p101 = w("101");
    let p1 = w("1");
    vec![
        first_failure(
            "000w ~ 0w and 101w ~ 1w",
            Word::all_up_to(2, cfg.depth),
            |x| {
                let a = (val_fc(&x.prepend(&p000)), val_fc(&x.prepend(&p0)));
                let b = (val_fc(&x.prepend(&p101)), val_fc(&x.prepend(&p1)));
                (a.0 != a.1 || b.0 != b.1).then(|| format!("w={x}"))
            },
        ),
        first_failure("a0av ~ av", ternary(cfg.depth.saturating_sub(1)), |v| {
            Digit::TERNARY.into_iter().find_map(|a| {
                let av = v.prepend(&Word::new(vec![a]));
                let a0av = av.prepend(&Word::new(vec![a, Digit::Zero]));
                (val_fc(&a0av) != val_fc(&av)).then(|| format!("a={a} v={v}"))
            })
        }),
    ]
}

pub fn check_intervals(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let f = |i: i64| fib(i).unwrap();
    vec![
        first_failure(
            "Zeckendorf words of length k lie in [F_{k-1}, F_k)",
            binary_without_11(cfg.depth).filter(|z| z.first() != Some(Digit::Zero)),
            |z| {
                let k = z.len() as i64;
                let v = val_f(z);
                let ok = if k == 0 {
                    v == BigInt::from(0)
                } else {
                    f(k - 1) <= v && v < f(k)
                };
                (!ok).then(|| format!("w={z} value {v}"))
            },
        ),
        first_failure(
            "complement sign follows the leading digit",
            binary_without_11(cfg.depth).filter(|x| !x.is_empty()),
            |x| {
                let k = x.len() as i64;
                let v = val_fc(x).unwrap();
                let ok = if x.first() == Some(Digit::Zero) {
                    BigInt::from(0) <= v && v < f(k - 1)
                } else {
                    -f(k - 2) <= v && v < BigInt::from(0)
                };
                (!ok).then(|| format!("w={x} value {v}"))
            },
        ),
        first_failure(
            "D words of length 2k+1 lie in their block",
            binary_without_11(cfg.depth).filter(|x| is_canonical_fc(x).unwrap()),
            |x| {
                let k = (x.len() / 2) as i64;
                let v = val_fc(x).unwrap();
                let ok = if x.first() == Some(Digit::Zero) {
                    f(2 * k - 2) <= v && v < f(2 * k)
                } else if k == 0 {
                    v == BigInt::from(-1)
                } else {
                    -f(2 * k - 1) <= v && v < -f(2 * k - 3)
                };
                (!ok).then(|| format!("w={x} value {v}"))
            },
        ),
    ]
}

pub fn check_adders(cfg: &VerifyConfig, m: Machines<'_>) -> Vec<CheckOutcome> {
    let three = |s: &str| w(s);
    vec![
        first_failure("B preserves val_F", ternary(cfg.depth), |u| {
            match raw(m.b, u) {
                Err(e) => Some(e),
                Ok(z) => (val_f(&z) != val_f(u)).then(|| format!("u={u}: output {z}")),
            }
        }),
        first_failure(
            "T preserves val_Fc",
            nonempty_ternary(cfg.depth),
            |u| match raw(m.t, u) {
                Err(e) => Some(e),
                Ok(z) => (z.len() != u.len() + 2 || val_fc(&z).unwrap() != val_fc(u).unwrap())
                    .then(|| format!("u={u}: output {z}")),
            },
        ),
        first_failure(
            "first letter of T output",
            nonempty_ternary(cfg.depth),
            |u| match raw(m.t, u) {
                Err(e) => Some(e),
                Ok(z) => {
                    let expect = if u.first() == Some(Digit::Zero) {
                        Digit::Zero
                    } else {
                        Digit::One
                    };
                    (z.first() != Some(expect)).then(|| format!("u={u}: output {z}"))
                }
            },
        ),
        first_failure("B on 0v, 101v, 202v against T", ternary(cfg.depth), |v| {
            let cases = [("0", "0", "0"), ("101", "1", "000"), ("202", "2", "001")];
            for (b_prefix, t_prefix, out_prefix) in cases {
                let bu = v.prepend(&three(b_prefix));
                let tu = v.prepend(&three(t_prefix));
                match (raw(m.b, &bu), raw(m.t, &tu)) {
                    (Ok(x), Ok(y)) => {
                        if x != y.prepend(&three(out_prefix)) {
                            return Some(format!("v={v}: B({bu})={x}, T({tu})={y}"));
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => return Some(e),
                }
            }
            None
        }),
    ]
}

pub fn check_pipelines(cfg: &VerifyConfig, m: Machines<'_>) -> Vec<CheckOutcome> {
    let r = cfg.range.max(0);
    let top = 2 * r;
    let pairs = |lo: i64, hi: i64| (lo..=hi).flat_map(move |a| (lo..=hi).map(move |b| (a, b)));
    vec![
        first_failure(
            "add_F(m, n) = rep_F(m + n)",
            pairs(0, top),
            |&(a, b)| match add_f_with(m.b, a, b) {
                Ok(z) if z == rep_f(a + b).unwrap() => None,
                Ok(z) => Some(format!("{a} + {b}: got {z}")),
                Err(e) => Some(format!("{a} + {b}: {e}")),
            },
        ),
        first_failure(
            "add_Fc(m, n) = rep_Fc(m + n)",
            pairs(-r, r),
            |&(a, b)| match add_fc_with(m.t, a, b) {
                Ok(x) if x == rep_fc(a + b) => None,
                Ok(x) => Some(format!("{a} + {b}: got {x}")),
                Err(e) => Some(format!("{a} + {b}: {e}")),
            },
        ),
    ]
}

pub fn check_derivation(cfg: &VerifyConfig, m: Machines<'_>) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let derived = derive_z();
    out.push(CheckOutcome {
        name: "derived machine is B",
        checked: 1,
        counterexample: match &derived {
            Err(e) => Some(e.to_string()),
            Ok(z) => isomorphism_mismatch(z, m.b),
        },
    });
    out.push(first_failure(
        "class recursion matches the oracle",
        ternary(cfg.depth),
        |u| {
            let tr = match oracle_translate(u) {
                Ok(tr) => tr,
                Err(e) => return Some(e.to_string()),
            };
            let mut class = ThetaClass::INITIAL;
            for (i, &a) in u.digits().iter().enumerate() {
                let (next, lambda) = match step_class(class, a) {
                    Ok(step) => step,
                    Err(e) => return Some(format!("u={u}: {e}")),
                };
                if lambda != tr.lambdas[i] || next.s != tr.prefix_triples[i + 1] {
                    return Some(format!("u={u} at position {i}"));
                }
                class = next;
            }
            match &derived {
                Ok(z) => {
                    let run = z.run(u).ok()?;
                    (run.output != tr.w || run.final_output != tr.s.word())
                        .then(|| format!("u={u}: derived machine gives {}", run.concatenated()))
                }
                Err(_) => None,
            }
        },
    ));

    let inherit_len = cfg.depth.min(6);
    let mut classes: HashMap<(i64, crate::derivation::StateTriple), Vec<Word>> = HashMap::new();
    let mut failure = None;
    for u in ternary(inherit_len) {
        match (theta(&u), oracle_translate(&u)) {
            (Ok(t), Ok(tr)) => classes.entry((t, tr.s)).or_default().push(u),
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e.to_string());
                break;
            }
        }
    }
    let mut checked = 0;
    if failure.is_none() {
        'classes: for members in classes.values() {
            for a in Digit::TERNARY {
                let mut child: Option<(i64, crate::derivation::StateTriple, &Word)> = None;
                for u in members {
                    checked += 1;
                    let mut ua = u.clone();
                    ua.push(a);
                    let key = (theta(&ua).unwrap(), oracle_translate(&ua).unwrap().s);
                    match child {
                        None => child = Some((key.0, key.1, u)),
                        Some((t, s, v)) if (t, s) != key => {
                            failure =
                                Some(format!("{u} and {v} are equivalent but differ after {a}"));
                            break 'classes;
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    out.push(CheckOutcome {
        name: "equivalent words have equivalent children",
        checked,
        counterexample: failure,
    });

    let report = check_append0_lemma(cfg.depth.min(8)).unwrap();
    for case in report.cases {
        out.push(CheckOutcome {
            name: match case.name {
                n if n.starts_with("(i)") => "append 0 (i)",
                n if n.starts_with("(ii)") => "append 0 (ii)",
                _ => "append 0 (iii)",
            },
            checked: case.pairs,
            counterexample: case
                .counterexample
                .map(|(u, w, d)| format!("u={u} w={w} difference {d}")),
        });
    }
    out
}

/// Every suite in order.
pub fn run_all(cfg: &VerifyConfig, machines: Machines<'_>) -> Vec<CheckOutcome> {
    let mut out = vec![check_fib_identities(cfg.depth)];
    out.extend(check_rep_f_bijection(cfg));
    out.extend(check_rep_fc_order(cfg));
    out.extend(check_neutral_prefixes(cfg));
    out.extend(check_intervals(cfg));
    out.extend(check_adders(cfg, machines));
    out.extend(check_pipelines(cfg, machines));
    out.extend(check_derivation(cfg, machines));
    out
}
