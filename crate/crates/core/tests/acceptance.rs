//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails or exceeds its time budget.
//!
//! Expected values either come from published tables transcribed below or
//! from the small independent oracles in this file (plain `i128` Fibonacci
//! arithmetic on strings), never from the library under test.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use fibcomp_core::adders::{add_f, add_fc, berstel, modified, table3, table3_csv};
use fibcomp_core::complement::{cmp_prec, enumerate_d, rep_fc};
use fibcomp_core::derivation::{derive_z, explore, oracle_translate};
use fibcomp_core::fib::{add_binary_words, rep_2c, val_2, val_2c};
use fibcomp_core::mealy::MealyMachine;
use fibcomp_core::rep_f;
use fibcomp_core::word::w;

// ---------------------------------------------------------------- oracles

/// `F_i` for `i ≥ -2`, with `F_{-2} = 0`, `F_{-1} = 1`, `F_0 = 1`, `F_1 = 2`.
fn f(i: i64) -> i128 {
    const TABLE: [i128; 120] = {
        let mut t = [0i128; 120];
        t[1] = 1;
        let mut i = 2;
        while i < 120 {
            t[i] = t[i - 1] + t[i - 2];
            i += 1;
        }
        t
    };
    TABLE[(i + 2) as usize]
}

fn o_val_f(s: &str) -> i128 {
    let k = s.len() as i64;
    s.bytes()
        .enumerate()
        .map(|(j, c)| (c - b'0') as i128 * f(k - 1 - j as i64))
        .sum()
}

fn o_val_fc(s: &str) -> i128 {
    let lead = (s.as_bytes()[0] - b'0') as i128;
    o_val_f(s) - lead * f(s.len() as i64)
}

fn o_in_d(s: &str) -> bool {
    s.len() % 2 == 1
        && !s.contains("11")
        && !s.starts_with("000")
        && !s.starts_with("101")
        && s.bytes().all(|c| c == b'0' || c == b'1')
}

fn o_words(radix: u8, len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| (0..radix).map(move |d| format!("{p}{d}")))
            .collect();
    }
    out
}

fn o_words_up_to(radix: u8, max_len: usize) -> Vec<String> {
    (0..=max_len).flat_map(|l| o_words(radix, l)).collect()
}

fn big(n: i128) -> BigInt {
    BigInt::from(n)
}

fn raw(m: &MealyMachine, u: &str) -> String {
    m.run_with_final(&w(u)).unwrap().to_string()
}

// ---------------------------------------------------------------- tables

/// Published table of `ℬ` and `𝒯` on every ternary word of length 1 to 3:
/// u, val_F(u), ℬ(u)·ℬ↓(u), its val_F, val_Fc(u), 𝒯(u)·𝒯↓(u), its val_Fc.
const TABLE3: [[&str; 7]; 39] = [
    ["0", "0", "0·000", "0", "0", "ε·000", "0"],
    ["1", "1", "0·001", "1", "-1", "ε·101", "-1"],
    ["2", "2", "0·010", "2", "-2", "ε·100", "-2"],
    ["00", "0", "00·000", "0", "0", "0·000", "0"],
    ["01", "1", "00·001", "1", "1", "0·001", "1"],
    ["02", "2", "00·010", "2", "2", "0·010", "2"],
    ["10", "2", "00·010", "2", "-1", "1·010", "-1"],
    ["11", "3", "00·100", "3", "0", "1·100", "0"],
    ["12", "4", "00·101", "4", "1", "1·101", "1"],
    ["20", "4", "00·101", "4", "-2", "1·001", "-2"],
    ["21", "5", "01·000", "5", "-1", "1·010", "-1"],
    ["22", "6", "01·001", "6", "0", "1·100", "0"],
    ["000", "0", "000·000", "0", "0", "00·000", "0"],
    ["001", "1", "000·001", "1", "1", "00·001", "1"],
    ["002", "2", "000·010", "2", "2", "00·010", "2"],
    ["010", "2", "000·010", "2", "2", "00·010", "2"],
    ["011", "3", "000·100", "3", "3", "00·100", "3"],
    ["012", "4", "000·101", "4", "4", "00·101", "4"],
    ["020", "4", "000·101", "4", "4", "00·101", "4"],
    ["021", "5", "001·000", "5", "5", "01·000", "5"],
    ["022", "6", "001·001", "6", "6", "01·001", "6"],
    ["100", "3", "000·100", "3", "-2", "10·100", "-2"],
    ["101", "4", "000·101", "4", "-1", "10·101", "-1"],
    ["102", "5", "001·000", "5", "0", "11·000", "0"],
    ["110", "5", "001·000", "5", "0", "11·000", "0"],
    ["111", "6", "001·001", "6", "1", "11·001", "1"],
    ["112", "7", "001·010", "7", "2", "11·010", "2"],
    ["120", "7", "001·010", "7", "2", "11·010", "2"],
    ["121", "8", "001·100", "8", "3", "11·100", "3"],
    ["122", "9", "001·101", "9", "4", "11·101", "4"],
    ["200", "6", "001·001", "6", "-4", "10·001", "-4"],
    ["201", "7", "001·010", "7", "-3", "10·010", "-3"],
    ["202", "8", "001·100", "8", "-2", "10·100", "-2"],
    ["210", "8", "010·000", "8", "-2", "10·100", "-2"],
    ["211", "9", "010·001", "9", "-1", "10·101", "-1"],
    ["212", "10", "010·010", "10", "0", "11·000", "0"],
    ["220", "10", "010·010", "10", "0", "11·000", "0"],
    ["221", "11", "010·100", "11", "1", "11·001", "1"],
    ["222", "12", "010·101", "12", "2", "11·010", "2"],
];

/// Zeckendorf representations of 0 to 29.
const TABLE1: [&str; 30] = [
    "", "1", "10", "100", "101", "1000", "1001", "1010", "10000", "10001", "10010", "10100",
    "10101", "100000", "100001", "100010", "100100", "100101", "101000", "101001", "101010",
    "1000000", "1000001", "1000010", "1000100", "1000101", "1001000", "1001001", "1001010",
    "1010000",
];

/// Fibonacci's complement representations of -10 to 19.
const TABLE2: [&str; 30] = [
    "1000100", "1000101", "1001000", "1001001", "1001010", "10000", "10001", "10010", "100", "1",
    "0", "001", "010", "00100", "00101", "01000", "01001", "01010", "0010000", "0010001",
    "0010010", "0010100", "0010101", "0100000", "0100001", "0100010", "0100100", "0100101",
    "0101000", "0101001",
];

// ---------------------------------------------------------------- criteria

fn c1_table3() {
    let rows = table3();
    assert_eq!(rows.len(), 39);
    for (row, expected) in rows.iter().zip(TABLE3) {
        assert_eq!(row.cells(), expected.map(String::from), "row {}", row.u);
    }
    let csv = table3_csv(&rows);
    let body: Vec<&str> = csv.lines().skip(1).collect();
    let expected: Vec<String> = TABLE3.iter().map(|r| r.join(",")).collect();
    assert_eq!(body, expected);
    // the oracle agrees with the published values
    for r in TABLE3 {
        assert_eq!(o_val_f(r[0]).to_string(), r[1]);
        assert_eq!(o_val_fc(r[0]).to_string(), r[4]);
        assert_eq!(o_val_f(&r[2].replace('·', "")).to_string(), r[3]);
        assert_eq!(o_val_fc(&r[5].replace(['·', 'ε'], "")).to_string(), r[6]);
    }
}

fn c2_worked_examples() {
    let (b, t) = (berstel(), modified());
    let r = b.run(&w("2220121")).unwrap();
    assert_eq!(r.output, w("0101011"));
    assert_eq!(r.final_output, w("100"));
    assert_eq!(o_val_f("2220121"), 92);
    assert_eq!(o_val_f("0101011100"), 92);

    let r = b.run(&w("2010202")).unwrap();
    assert_eq!(r.output, w("0010110"));
    assert_eq!(b.state_name(r.last_state), "100.6");

    let z = raw(t, "2220121");
    assert_eq!(z, "110110100");
    assert_eq!(o_val_fc(&z), 24);
    assert_eq!(o_val_fc("2220121"), 24);

    let r = t.run(&w("2010202")).unwrap();
    assert_eq!(r.output, w("100110"));
    assert_eq!(o_val_fc(&r.concatenated().to_string()), -10);
}

fn c3_berstel_exhaustive() {
    let b = berstel();
    let mut count = 0;
    for u in o_words_up_to(3, 10) {
        let z = raw(b, &u);
        assert_eq!(o_val_f(&z), o_val_f(&u), "u={u} output {z}");
        count += 1;
    }
    assert_eq!(count, 88573); // including the empty word
}

fn c4_modified_exhaustive() {
    let t = modified();
    let mut count = 0;
    for u in o_words_up_to(3, 10).into_iter().filter(|u| !u.is_empty()) {
        let z = raw(t, &u);
        assert_eq!(z.len(), u.len() + 2, "u={u}");
        assert_eq!(o_val_fc(&z), o_val_fc(&u), "u={u} output {z}");
        count += 1;
    }
    assert_eq!(count, 88572);
}

fn c5_end_to_end() {
    let mut pairs = 0u64;
    for m in -300i64..=300 {
        for n in -300i64..=300 {
            let x = add_fc(m, n);
            let s = x.to_string();
            assert!(
                o_in_d(&s) && o_val_fc(&s) == (m + n) as i128,
                "{m} + {n} gave {s}"
            );
            assert_eq!(x, rep_fc(m + n));
            pairs += 1;
        }
    }
    assert_eq!(pairs, 361_201);
    for m in 0i64..=600 {
        for n in 0i64..=600 {
            let z = add_f(m, n).unwrap();
            let s = z.to_string();
            assert!(
                !s.starts_with('0') && !s.contains("11"),
                "{m} + {n} gave {s}"
            );
            assert_eq!(o_val_f(&s), (m + n) as i128, "{m} + {n} gave {s}");
            assert_eq!(z, rep_f(m + n).unwrap());
        }
    }
}

fn c6_derivation() {
    let classes = explore().unwrap();
    assert!(classes.iter().all(|c| (0..=7).contains(&c.class.theta)));
    let z = derive_z().unwrap();
    assert_eq!(z.state_count(), 10);
    assert_eq!(z.transition_count(), 30);
    assert!(z.is_isomorphic(berstel()));

    let mut names: Vec<&str> = z.state_names().iter().map(String::as_str).collect();
    names.sort();
    let mut q = [
        "000.0", "001.1", "010.3", "100.5", "101.6", "000.1", "001.2", "010.4", "100.6", "101.7",
    ];
    q.sort();
    assert_eq!(names, q);

    for u in o_words_up_to(3, 8) {
        let tr = oracle_translate(&w(&u)).unwrap();
        let run = z.run(&w(&u)).unwrap();
        assert_eq!(run.output, tr.w, "u={u}");
        assert_eq!(run.final_output, tr.s.word(), "u={u}");
        // the splitting itself, checked with the independent value map
        let split = format!("{}{}", tr.w, tr.s);
        assert_eq!(o_val_f(&split), o_val_f(&u), "u={u}");
        assert_eq!(tr.w.len(), u.len());
    }
}

fn c7_tables_1_2() {
    for (n, expected) in TABLE1.iter().enumerate() {
        assert_eq!(rep_f(n as u32).unwrap().to_string(), *expected, "n={n}");
        if n > 0 {
            assert_eq!(o_val_f(expected), n as i128);
        }
    }
    for (i, expected) in TABLE2.iter().enumerate() {
        let n = i as i64 - 10;
        assert_eq!(rep_fc(n).to_string(), *expected, "n={n}");
        assert_eq!(o_val_fc(expected), n as i128);
        assert!(o_in_d(expected));
    }
}

fn c8_order() {
    assert_eq!(rep_fc(0), w("0"));
    let mut prev = rep_fc(-5000);
    for n in -4999i64..=5000 {
        let next = rep_fc(n);
        assert_eq!(
            cmp_prec(prev.as_word(), next.as_word()).unwrap(),
            std::cmp::Ordering::Less,
            "n={n}"
        );
        prev = next;
    }
    // words of D up to length 15 are the representations of [-F_13, F_14)
    let words = enumerate_d(15).unwrap();
    let (lo, hi) = (-f(13) as i64, f(14) as i64);
    let image: Vec<_> = (lo..hi).map(rep_fc).collect();
    assert_eq!(words, image);
    let brute = o_words_up_to(2, 15)
        .into_iter()
        .filter(|s| o_in_d(s))
        .count();
    assert_eq!(words.len(), brute);
}

fn c9_lemmas() {
    // Fibonacci identities for k <= 30
    for k in 1..=30i64 {
        let alt: i128 = (0..2 * k)
            .map(|i| if i % 2 == 0 { 1 } else { -1 } * f(i) * f(2 * k - i))
            .sum();
        assert_eq!(alt, -f(2 * k - 2), "k={k}");
        let partial: i128 = (0..2 * k).map(f).sum();
        assert_eq!(partial, f(2 * k + 1) - 2, "k={k}");
        let squares: i128 = (0..2 * k).map(|i| f(i) * f(i)).sum();
        assert_eq!(squares, f(2 * k - 2) * f(2 * k + 1), "k={k}");
    }
    let lib = fibcomp_core::fib::check_identities(30);
    assert_eq!(lib.len(), 30);
    assert!(lib.iter().all(|c| c.all_hold()));

    // neutral prefixes, checked through the library value map
    let vfc = |s: &str| fibcomp_core::val_fc(&w(s)).unwrap();
    for x in o_words_up_to(2, 14) {
        assert_eq!(vfc(&format!("000{x}")), vfc(&format!("0{x}")), "w={x}");
        assert_eq!(vfc(&format!("101{x}")), vfc(&format!("1{x}")), "w={x}");
        assert_eq!(o_val_fc(&format!("101{x}")), o_val_fc(&format!("1{x}")));
    }
    for v in o_words_up_to(3, 10) {
        for a in ["0", "1", "2"] {
            assert_eq!(
                vfc(&format!("{a}0{a}{v}")),
                vfc(&format!("{a}{v}")),
                "a={a} v={v}"
            );
        }
    }

    // interval lemmas up to length 17
    let vf = |s: &str| big(o_val_f(s));
    for x in o_words_up_to(2, 17)
        .into_iter()
        .filter(|s| !s.contains("11"))
    {
        let k = x.len() as i64;
        let lib_f = fibcomp_core::val_f(&w(&x));
        assert_eq!(lib_f, vf(&x));
        if !x.starts_with('0') {
            if k == 0 {
                assert_eq!(o_val_f(&x), 0);
            } else {
                let v = o_val_f(&x);
                assert!(f(k - 1) <= v && v < f(k), "w={x}");
            }
        }
        if k > 0 {
            let v = o_val_fc(&x);
            assert_eq!(vfc(&x), big(v));
            if x.starts_with('0') {
                assert!(0 <= v && v < f(k - 1), "w={x}");
            } else {
                assert!(-f(k - 2) <= v && v < 0, "w={x}");
            }
        }
        if o_in_d(&x) {
            let v = o_val_fc(&x);
            let half = k / 2;
            if x.starts_with('0') {
                assert!(f(2 * half - 2) <= v && v < f(2 * half), "w={x}");
            } else if half == 0 {
                assert_eq!(v, -1);
            } else {
                assert!(-f(2 * half - 1) <= v && v < -f(2 * half - 3), "w={x}");
            }
        }
    }

    // append-0 lemma over equal-value ternary pairs of length <= 8; shorter
    // words are represented by their zero-padded forms
    let report = fibcomp_core::derivation::check_append0_lemma(8).unwrap();
    assert!(report.holds(), "{report}");
    let mut groups: BTreeMap<i128, Vec<String>> = BTreeMap::new();
    for x in o_words(3, 8) {
        groups.entry(o_val_f(&x)).or_default().push(x);
    }
    for members in groups.values() {
        let shifted: Vec<i128> = members.iter().map(|x| o_val_f(&format!("{x}0"))).collect();
        for (u, su) in members.iter().zip(&shifted) {
            for (x, sx) in members.iter().zip(&shifted) {
                let d = su - sx;
                assert!((-1..=1).contains(&d), "u={u} w={x}");
                if x.ends_with("000") {
                    assert!((0..=1).contains(&d), "u={u} w={x}");
                }
                if x.ends_with("101") {
                    assert!((-1..=0).contains(&d), "u={u} w={x}");
                }
            }
        }
    }

    // first letter of T, and B against T, up to length 8
    let (b, t) = (berstel(), modified());
    for u in o_words_up_to(3, 8) {
        if !u.is_empty() {
            let z = raw(t, &u);
            let expect = if u.starts_with('0') { '0' } else { '1' };
            assert!(z.starts_with(expect), "u={u} output {z}");
        }
        let v = &u;
        assert_eq!(
            raw(b, &format!("0{v}")),
            format!("0{}", raw(t, &format!("0{v}")))
        );
        assert_eq!(
            raw(b, &format!("101{v}")),
            format!("000{}", raw(t, &format!("1{v}")))
        );
        assert_eq!(
            raw(b, &format!("202{v}")),
            format!("001{}", raw(t, &format!("2{v}")))
        );
    }
}

fn c10_twos_complement() {
    let sum = add_binary_words(&w("01011"), &w("10001")).unwrap();
    assert_eq!(sum, w("11100"));
    assert_eq!(val_2(&sum).unwrap(), big(28));
    assert_eq!(
        val_2(&w("01011")).unwrap() + val_2(&w("10001")).unwrap(),
        big(28)
    );
    assert_eq!(val_2c(&w("01011")).unwrap(), big(11));
    assert_eq!(val_2c(&w("10001")).unwrap(), big(-15));
    assert_eq!(val_2c(&sum).unwrap(), big(-4));
    assert_eq!(rep_2c(&big(-4)), w("100"));
    assert_eq!(rep_2c(&big(11)), w("01011"));
    for n in -64i128..64 {
        let x = rep_2c(&big(n)).to_string();
        assert!(!x.starts_with("00") && !x.starts_with("11"), "n={n}");
        let k = x.len() as u32;
        let unsigned = i128::from_str_radix(&x, 2).unwrap();
        let lead = (x.as_bytes()[0] - b'0') as i128;
        assert_eq!(unsigned - lead * (1 << k), n, "n={n}");
    }
}

// ---------------------------------------------------------------- harness

type Criterion = (&'static str, fn(), Option<u64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "1 table of B and T on words of length <= 3",
            c1_table3,
            Some(1),
        ),
        ("2 worked examples", c2_worked_examples, Some(1)),
        (
            "3 B preserves val_F, all words of length <= 10",
            c3_berstel_exhaustive,
            Some(10),
        ),
        (
            "4 T preserves val_Fc, all words of length <= 10",
            c4_modified_exhaustive,
            Some(10),
        ),
        ("5 end-to-end addition", c5_end_to_end, Some(60)),
        ("6 derivation of the adder", c6_derivation, Some(10)),
        ("7 representation tables", c7_tables_1_2, None),
        ("8 order of complement representations", c8_order, Some(30)),
        ("9 lemma suites", c9_lemmas, Some(120)),
        ("10 two's complement cross-check", c10_twos_complement, None),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let over = budget.is_some_and(|s| elapsed >= Duration::from_secs(s));
        let limit = budget.map_or(String::new(), |s| format!(", limit {s} s"));
        match result {
            Ok(()) if !over => println!("PASS criterion {name} ({elapsed:.2?}{limit})"),
            Ok(()) => {
                failed += 1;
                println!("FAIL criterion {name}: took {elapsed:.2?}{limit}");
            }
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed == 0 {
        println!("all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
