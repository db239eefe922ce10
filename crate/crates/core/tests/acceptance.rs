//! End-to-end acceptance run. Prints one line per criterion and exits nonzero on any failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use num_traits::{Signed, ToPrimitive};
use qmp::lsq_cramer::{lsq_left, lsq_right, solve_matrix_method, Side};
use qmp::oracle::{embed_complex, limit_pinv, numeric_det, numeric_pinv};
use qmp::pinv::{mp_inverse, mp_inverse_cdet, mp_inverse_rdet, rank_of, verify_penrose};
use qmp::qmat::parse_qmat;
use qmp::rowcol_det::{
    char_poly, col_det, double_det, hermitian_det, left_cofactor, principal_minor_sum,
    right_cofactor, row_det,
};
use qmp::{ratio, QMatrix, Quaternion};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn lit(s: &str) -> Quaternion {
    qmp::parse_quaternion(s).unwrap()
}

fn worked_a() -> QMatrix {
    parse_qmat("3 4\ni -k j 1\n2i j 1 k\n-1 j k i\n").unwrap()
}

fn golden() -> Outcome {
    let a = worked_a();
    let y = parse_qmat("1 4\ni j k 1\n").unwrap();
    let gram = &a * &a.adjoint();
    ensure(rank_of(&a).unwrap() == 2, || "rank".into())?;
    let minor = gram.delete_row_col(3, 3).unwrap();
    ensure(hermitian_det(&minor).unwrap() == ratio(21, 1), || {
        "(3,3)-deleted minor".into()
    })?;
    ensure(
        principal_minor_sum(&gram, 2).unwrap() == ratio(42, 1),
        || "minor sum".into(),
    )?;
    let r11 = row_det(
        &gram
            .replace_row(1, &a.adjoint().row_entries(1).unwrap())
            .unwrap()
            .delete_row_col(3, 3)
            .unwrap(),
        1,
    )
    .unwrap();
    ensure(r11 == lit("-2-3i-2j-2k"), || format!("r11 = {r11}"))?;
    let expected = parse_qmat(
        "4 3\n-2-3i-2j-2k 2-12i+2j+2k -3+2i+2j-2k\n1+i+2j+6k -2+2i-6j-4k 1-i-6j+2k\n\
         -2-i-6j-k 6-2i+4j+2k -1+2i+j-6k\n6+i+j+2k -4+2i-2j-6k 1-6i-2j+k\n",
    )
    .unwrap()
    .scale(&ratio(1, 42));
    ensure(mp_inverse(&a).unwrap().pinv == expected, || "A+".into())?;
    ensure(mp_inverse_rdet(&a).unwrap().pinv == expected, || {
        "A+ (row form)".into()
    })?;
    let z = &y * &a.adjoint();
    ensure(z == parse_qmat("1 3\n2+2i 3 2-2i\n").unwrap(), || {
        "z".into()
    })?;
    let x0 = parse_qmat("1 3\n8+11i+3j-3k 12-4i-8j 11-8i+3j+3k\n")
        .unwrap()
        .scale(&ratio(1, 42));
    ensure(lsq_left(&a, &y).unwrap().solution == x0, || {
        "x0 by Cramer".into()
    })?;
    ensure(
        solve_matrix_method(&a, &y, Side::Left).unwrap().solution == x0,
        || "x0 by A+".into(),
    )?;
    Ok("all worked-example values reproduced exactly".into())
}

fn penrose_suite() -> Outcome {
    let mut rng = rng(2);
    let mut deficient = 0;
    for case in 0..200 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = random_matrix(&mut rng, m, n);
        let x = mp_inverse(&a).unwrap().pinv;
        ensure(verify_penrose(&a, &x).unwrap().all(), || {
            format!("case {case}: Penrose fails for {a:?}")
        })?;
        ensure(x == pinv_by_factorisation(&a), || {
            format!("case {case}: differs from factorisation oracle")
        })?;
        if a.is_zero() {
            continue;
        }
        ensure(
            mp_inverse_cdet(&a).unwrap().pinv == mp_inverse_rdet(&a).unwrap().pinv,
            || format!("case {case}: column and row forms differ"),
        )?;
        if rank_of(&a).unwrap() < m.min(n) {
            deficient += 1;
        }
    }
    for case in 0..40 {
        let (m, n) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
        let r = rng.gen_range(1..m.min(n));
        let a = random_of_rank(&mut rng, m, n, r);
        let cdet = mp_inverse_cdet(&a).unwrap().pinv;
        ensure(verify_penrose(&a, &cdet).unwrap().all(), || {
            format!("rank-deficient case {case}: Penrose fails")
        })?;
        ensure(cdet == mp_inverse_rdet(&a).unwrap().pinv, || {
            format!("rank-deficient case {case}: forms differ")
        })?;
        deficient += 1;
    }
    Ok(format!(
        "200 random + 40 low-rank matrices ({deficient} rank-deficient)"
    ))
}

fn hermitian_equality() -> Outcome {
    let mut rng = rng(3);
    for case in 0..100 {
        let n = rng.gen_range(1..=4);
        let a = random_hermitian(&mut rng, n);
        let reference = row_det(&a, 1).unwrap();
        ensure(reference.is_real(), || {
            format!("case {case}: rdet_1 not real")
        })?;
        for k in 1..=n {
            ensure(row_det(&a, k).unwrap() == reference, || {
                format!("case {case}: rdet_{k}")
            })?;
            ensure(col_det(&a, k).unwrap() == reference, || {
                format!("case {case}: cdet_{k}")
            })?;
        }
    }
    Ok("100 Hermitian matrices, all row and column determinants equal and real".into())
}

fn expansion_identities() -> Outcome {
    let mut rng = rng(4);
    for case in 0..50 {
        let n = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, n, n);
        for i in 1..=n {
            let rows: Quaternion = (1..=n)
                .map(|j| a.entry(i, j) * &right_cofactor(&a, i, j).unwrap())
                .sum();
            ensure(rows == row_det(&a, i).unwrap(), || {
                format!("case {case}: row expansion {i}")
            })?;
            ensure(rows == brute_rdet(&a, i), || {
                format!("case {case}: rdet_{i} vs direct reading")
            })?;
            let cols: Quaternion = (1..=n)
                .map(|k| &left_cofactor(&a, k, i).unwrap() * a.entry(k, i))
                .sum();
            ensure(cols == col_det(&a, i).unwrap(), || {
                format!("case {case}: column expansion {i}")
            })?;
            ensure(cols == brute_cdet(&a, i), || {
                format!("case {case}: cdet_{i} vs direct reading")
            })?;
        }
    }
    for case in 0..100 {
        let n = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, n, n);
        let b = random_quaternion(&mut rng, -3, 3);
        let t = rng.gen_range(1..=n);
        for i in 1..=n {
            let scaled_row: Vec<_> = a.row_entries(i).unwrap().iter().map(|v| &b * v).collect();
            ensure(
                row_det(&a.replace_row(i, &scaled_row).unwrap(), i).unwrap()
                    == &b * &row_det(&a, i).unwrap(),
                || format!("case {case}: left homogeneity of rdet_{i}"),
            )?;
            let scaled_col: Vec<_> = a.col_entries(i).unwrap().iter().map(|v| v * &b).collect();
            ensure(
                col_det(&a.replace_column(i, &scaled_col).unwrap(), i).unwrap()
                    == &col_det(&a, i).unwrap() * &b,
                || format!("case {case}: right homogeneity of cdet_{i}"),
            )?;
        }
        let part: Vec<_> = (0..n).map(|_| random_quaternion(&mut rng, -2, 2)).collect();
        let row = a.row_entries(t).unwrap();
        let rest: Vec<_> = row.iter().zip(&part).map(|(v, p)| v - p).collect();
        let (rb, rc) = (
            a.replace_row(t, &part).unwrap(),
            a.replace_row(t, &rest).unwrap(),
        );
        let col = a.col_entries(t).unwrap();
        let crest: Vec<_> = col.iter().zip(&part).map(|(v, p)| v - p).collect();
        let (cb, cc) = (
            a.replace_column(t, &part).unwrap(),
            a.replace_column(t, &crest).unwrap(),
        );
        for i in 1..=n {
            for (whole, left, right, what) in [(&a, &rb, &rc, "row"), (&a, &cb, &cc, "column")] {
                ensure(
                    row_det(whole, i).unwrap()
                        == row_det(left, i).unwrap() + row_det(right, i).unwrap(),
                    || format!("case {case}: {what} additivity of rdet_{i}"),
                )?;
                ensure(
                    col_det(whole, i).unwrap()
                        == col_det(left, i).unwrap() + col_det(right, i).unwrap(),
                    || format!("case {case}: {what} additivity of cdet_{i}"),
                )?;
            }
        }
    }
    Ok("cofactor expansions on 50 matrices, homogeneity and additivity on 100".into())
}

fn characteristic_polynomial() -> Outcome {
    let mut rng = rng(5);
    for case in 0..50 {
        let n = rng.gen_range(1..=4);
        let a = random_hermitian(&mut rng, n);
        let values: Vec<_> = (0..=n as i64)
            .map(|t| {
                let shifted = QMatrix::identity(n)
                    .scale(&ratio(t, 1))
                    .try_sub(&a)
                    .unwrap();
                hermitian_det(&shifted).unwrap()
            })
            .collect();
        let poly = char_poly(&a).unwrap();
        ensure(
            poly.coefficients() == interpolate(&values).as_slice(),
            || format!("case {case}: coefficients"),
        )?;
    }
    Ok("50 Hermitian matrices match interpolation of det(tI - A)".into())
}

fn full_rank_consistency() -> Outcome {
    let mut rng = rng(6);
    let (mut tall, mut wide) = (0, 0);
    while tall + wide < 50 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = random_matrix(&mut rng, m, n);
        let r = rank_of(&a).unwrap();
        let star = a.adjoint();
        if r == n && r > 0 {
            let expected = &inverse(&(&star * &a)).unwrap() * &star;
            ensure(mp_inverse_cdet(&a).unwrap().pinv == expected, || {
                format!("{m}x{n}: column form")
            })?;
            ensure(mp_inverse(&a).unwrap().pinv == expected, || {
                format!("{m}x{n}: dispatch")
            })?;
            tall += 1;
        }
        if r == m && r > 0 {
            let expected = &star * &inverse(&(&a * &star)).unwrap();
            ensure(mp_inverse_rdet(&a).unwrap().pinv == expected, || {
                format!("{m}x{n}: row form")
            })?;
            ensure(mp_inverse(&a).unwrap().pinv == expected, || {
                format!("{m}x{n}: dispatch")
            })?;
            wide += 1;
        }
    }
    Ok(format!(
        "{tall} full-column-rank and {wide} full-row-rank checks"
    ))
}

fn cramer_contract() -> Outcome {
    let mut rng = rng(7);
    let mut deficient = 0;
    for case in 0..100 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = if case % 3 == 0 && m.min(n) > 1 {
            let r = rng.gen_range(1..m.min(n));
            random_of_rank(&mut rng, m, n, r)
        } else {
            random_matrix(&mut rng, m, n)
        };
        if a.is_zero() {
            continue;
        }
        if rank_of(&a).unwrap() < m.min(n) {
            deficient += 1;
        }
        let star = a.adjoint();
        let y = random_matrix(&mut rng, m, 1);
        let x = lsq_right(&a, &y).unwrap().solution;
        ensure(&(&star * &a) * &x == &star * &y, || {
            format!("case {case}: right normal equations")
        })?;
        ensure(rank(&star.hstack(&x).unwrap()) == rank(&star), || {
            format!("case {case}: x outside range(A*)")
        })?;
        ensure(
            x == solve_matrix_method(&a, &y, Side::Right).unwrap().solution,
            || format!("case {case}: right A+y"),
        )?;
        let y = random_matrix(&mut rng, 1, n);
        let x = lsq_left(&a, &y).unwrap().solution;
        ensure(&(&x * &a) * &star == &y * &star, || {
            format!("case {case}: left normal equations")
        })?;
        ensure(rank(&star.vstack(&x).unwrap()) == rank(&star), || {
            format!("case {case}: x outside row space of A*")
        })?;
        ensure(
            x == solve_matrix_method(&a, &y, Side::Left).unwrap().solution,
            || format!("case {case}: left yA+"),
        )?;
    }
    Ok(format!("100 systems per side ({deficient} rank-deficient)"))
}

fn oracle_agreement() -> Outcome {
    let mut rng = rng(8);
    let mut worst = 0f64;
    for case in 0..50 {
        let n = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, n, n);
        let ddet = double_det(&a).unwrap();
        let numeric = numeric_det(&embed_complex(&a)).unwrap().norm();
        let exact = ddet.abs().to_f64().unwrap();
        ensure((numeric - exact).abs() <= 1e-6 * exact.max(1.0), || {
            format!("case {case}: |ddet| {exact} vs {numeric}")
        })?;
        if a.is_zero() {
            continue;
        }
        let ns = numeric_pinv(&a).map_err(|e| format!("case {case}: {e}"))?;
        let diff = ns.pinv.max_abs_diff(&mp_inverse(&a).unwrap().pinv).unwrap();
        worst = worst.max(diff);
        ensure(diff < 1e-8, || {
            format!("case {case}: Newton-Schulz off by {diff:e}")
        })?;
    }
    let mut instances = vec![worked_a()];
    while instances.len() < 21 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = random_matrix(&mut rng, m, n);
        if rank_of(&a).unwrap() == m.min(n) {
            instances.push(a);
        }
    }
    for (case, a) in instances.iter().enumerate() {
        let exact = mp_inverse(a).unwrap().pinv;
        let errors: Vec<f64> = [1e-2, 1e-4, 1e-6]
            .iter()
            .map(|&alpha| limit_pinv(a, alpha).unwrap().max_abs_diff(&exact).unwrap())
            .collect();
        ensure(errors[0] > errors[1] && errors[1] > errors[2], || {
            format!("limit instance {case}: errors {errors:?} not decreasing")
        })?;
    }
    Ok(format!(
        "50 square matrices (worst Newton-Schulz error {worst:.1e}), 21 limit sequences"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 worked example, exact", golden),
        ("2 Penrose conditions", penrose_suite),
        ("3 Hermitian determinant equality", hermitian_equality),
        ("4 expansion and linearity identities", expansion_identities),
        ("5 characteristic polynomial", characteristic_polynomial),
        ("6 full-rank consistency", full_rank_consistency),
        ("7 Cramer least-squares contract", cramer_contract),
        ("8 floating-point oracle agreement", oracle_agreement),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail} ({secs:.2}s)"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  criterion {name}: {reason} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
