//! The five subcommands, each producing a fully rendered [`Envelope`].

use cyclogeny::arith::{factorize, mult_order, FactorBudget, Factorization};
use cyclogeny::central::{
    a_n, extension_weil_poly, is_central_extension, point_count, power_sum,
};
use cyclogeny::cyclicity::{
    classify_local, failed_hypotheses, is_cyclic_class, verify_containments, Hypothesis,
    LocalReport,
};
use cyclogeny::ec::{class_census_seeded, Census};
use cyclogeny::{Cyclicity, WeilCentralClass};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

use crate::report::{CsvTable, Envelope, Status};

pub struct Ctx {
    pub budget: FactorBudget,
    pub n_max: u64,
    pub seed: u64,
}

fn class_json(class: &WeilCentralClass) -> Value {
    json!({
        "a": class.a().to_string(),
        "q": class.q().to_string(),
        "g": class.g(),
        "p": class.p().to_string(),
        "r": class.r(),
        "ordinary": class.is_ordinary(),
    })
}

fn factors_json(fac: &Factorization) -> Value {
    let list: Vec<Value> = fac
        .factors()
        .iter()
        .map(|(p, e)| json!({"prime": p.to_string(), "exponent": e}))
        .collect();
    Value::Array(list)
}

/// "3*5^2" style rendering; the residual cofactor is marked as such.
fn factors_string(fac: &Factorization) -> String {
    let mut parts: Vec<String> = fac
        .factors()
        .iter()
        .map(|(p, e)| {
            if *e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    if let Some(r) = fac.residual() {
        parts.push(format!("{r}<unfactored>"));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn cyclicity_str(c: &Cyclicity) -> &'static str {
    match c {
        Cyclicity::Cyclic => "cyclic",
        Cyclicity::NotCyclic => "not_cyclic",
        Cyclicity::Unknown { .. } => "unknown",
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn local_json(rep: &LocalReport) -> Value {
    json!({
        "l": rep.l.to_string(),
        "v_n1": rep.v_n1,
        "case": rep.case.label(),
        "l_cyclic": rep.l_cyclic,
        "omega": rep.omega.as_ref().map(|w| w.to_string()),
    })
}

fn list_string(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_class(
    a: &str,
    q: &str,
    g: u32,
) -> Result<WeilCentralClass, String> {
    let a: BigInt = a
        .parse()
        .map_err(|_| format!("cannot parse a = {a:?} as an integer"))?;
    let q: BigUint = q
        .parse()
        .map_err(|_| format!("cannot parse q = {q:?} as a nonnegative integer"))?;
    WeilCentralClass::new(a, q, g).map_err(|e| e.to_string())
}

fn parse_prime_arg(l: &str) -> Result<BigUint, String> {
    l.parse()
        .map_err(|_| format!("cannot parse l = {l:?} as a nonnegative integer"))
}

/// The literal lower-bound expression: multiples of `l`, minus the evens,
/// minus multiples of the odd primes dividing `g` (even divisors are
/// already inside "- 2N"), and for the cyclic column minus multiples of
/// `omega`.
fn growth_expression(l: &BigUint, g: u32) -> String {
    let mut expr = format!("{l}N - 2N");
    let mut g_left = g;
    while g_left % 2 == 0 {
        g_left /= 2;
    }
    let mut d = 3u32;
    while g_left > 1 {
        if g_left % d == 0 {
            expr.push_str(&format!(" - {d}N"));
            while g_left % d == 0 {
                g_left /= d;
            }
        }
        d += 2;
    }
    expr
}

fn cyclic_expression(l: &BigUint, g: u32, omega: &BigUint) -> String {
    format!("{} - {omega}N", growth_expression(l, g))
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

pub fn analyze(ctx: &Ctx, a: &str, q: &str, g: u32, l_args: &[String]) -> Envelope {
    let mut inputs = Map::new();
    inputs.insert("a".into(), json!(a));
    inputs.insert("q".into(), json!(q));
    inputs.insert("g".into(), json!(g));
    inputs.insert("l".into(), json!(l_args));
    inputs.insert("rho_budget".into(), json!(ctx.budget.rho_iterations));

    let class = match parse_class(a, q, g) {
        Ok(c) => c,
        Err(reason) => return Envelope::failure("analyze", inputs, reason),
    };

    let n1 = class.base_point_count();
    let n1_unsigned = n1.to_biguint().expect("point counts are positive");
    let fac = match factorize(&n1_unsigned, &ctx.budget) {
        Ok(f) => f,
        Err(e) => return Envelope::failure("analyze", inputs, e.to_string()),
    };
    let f = class.weil_poly();
    let f_prime_one = f.derivative_at_one();
    let global = match is_cyclic_class(&f, &ctx.budget) {
        Ok(v) => v,
        Err(e) => return Envelope::failure("analyze", inputs, e.to_string()),
    };

    // requested primes, or by default every prime dividing N_1
    let requested: Result<Vec<BigUint>, String> = if l_args.is_empty() {
        Ok(fac.prime_factors().cloned().collect())
    } else {
        l_args.iter().map(|s| parse_prime_arg(s)).collect()
    };
    let requested = match requested {
        Ok(r) => r,
        Err(reason) => return Envelope::failure("analyze", inputs, reason),
    };
    let mut locals = Vec::new();
    for l in &requested {
        match classify_local(&class, l, &ctx.budget) {
            Ok(rep) => locals.push(rep),
            Err(e) => return Envelope::failure("analyze", inputs, e.to_string()),
        }
    }

    let (status, reason) = match &global {
        Cyclicity::Unknown { residual } => (
            Status::Unknown,
            Some(format!(
                "factorization of N_1 left the composite cofactor {residual}; raise --rho-budget"
            )),
        ),
        _ => (Status::Ok, None),
    };

    let results = json!({
        "class": class_json(&class),
        "n1": n1.to_string(),
        "n1_factors": factors_json(&fac),
        "n1_factorization": factors_string(&fac),
        "n1_complete": fac.is_complete(),
        "f_prime_one": f_prime_one.to_string(),
        "cyclic": cyclicity_str(&global),
        "locals": locals.iter().map(local_json).collect::<Vec<_>>(),
    });

    let mut text = String::new();
    text.push_str(&format!(
        "class {class}: p = {}, r = {}, ordinary: {}\n",
        class.p(),
        class.r(),
        yes_no(class.is_ordinary())
    ));
    text.push_str(&format!("N_1 = {n1} = {}\n", factors_string(&fac)));
    text.push_str(&format!("f'(1) = {f_prime_one}\n"));
    text.push_str(&format!("cyclic: {}\n", cyclicity_str(&global)));
    for rep in &locals {
        text.push_str(&format!(
            "l = {}: v_l(N_1) = {}, case {}, l-cyclic: {}{}\n",
            rep.l,
            rep.v_n1,
            rep.case.label(),
            yes_no(rep.l_cyclic),
            match &rep.omega {
                Some(w) => format!(", omega = {w}"),
                None => String::new(),
            }
        ));
    }

    let header = vec![
        "a", "q", "g", "p", "r", "ordinary", "n1", "n1_factorization", "f_prime_1",
        "global_cyclic", "l", "v_n1", "case", "l_cyclic", "omega",
    ];
    let class_cols = |extra: Vec<String>| -> Vec<String> {
        let mut row = vec![
            class.a().to_string(),
            class.q().to_string(),
            class.g().to_string(),
            class.p().to_string(),
            class.r().to_string(),
            yes_no(class.is_ordinary()).into(),
            n1.to_string(),
            factors_string(&fac),
            f_prime_one.to_string(),
            cyclicity_str(&global).into(),
        ];
        row.extend(extra);
        row
    };
    let rows = if locals.is_empty() {
        vec![class_cols(vec!["".into(); 5])]
    } else {
        locals
            .iter()
            .map(|rep| {
                class_cols(vec![
                    rep.l.to_string(),
                    rep.v_n1.to_string(),
                    rep.case.label().into(),
                    yes_no(rep.l_cyclic).into(),
                    rep.omega.as_ref().map(|w| w.to_string()).unwrap_or_default(),
                ])
            })
            .collect()
    };

    Envelope {
        command: "analyze",
        inputs,
        status,
        reason,
        results,
        text,
        csv: CsvTable { header, rows },
    }
}

// ---------------------------------------------------------------------------
// extend
// ---------------------------------------------------------------------------

pub fn extend(_ctx: &Ctx, a: &str, q: &str, g: u32, n: u64) -> Envelope {
    let mut inputs = Map::new();
    inputs.insert("a".into(), json!(a));
    inputs.insert("q".into(), json!(q));
    inputs.insert("g".into(), json!(g));
    inputs.insert("n".into(), json!(n));

    let class = match parse_class(a, q, g) {
        Ok(c) => c,
        Err(reason) => return Envelope::failure("extend", inputs, reason),
    };
    if n < 1 {
        return Envelope::failure("extend", inputs, "extension degree must be at least 1".into());
    }

    let f_n = extension_weil_poly(&class, n);
    let n_n = point_count(&class, n);
    let central = is_central_extension(&class, n);
    let middle = central.then(|| f_n.middle_coefficient().clone());
    let recursion_agrees = if central && class.is_ordinary() {
        let recursed = a_n(&class, n).expect("ordinary class");
        let oracle = -power_sum(&class, n);
        Some(recursed == oracle && Some(&recursed) == middle.as_ref())
    } else {
        None
    };

    let coeff_strings: Vec<String> = f_n.coeffs().iter().map(|c| c.to_string()).collect();
    let results = json!({
        "class": class_json(&class),
        "n": n,
        "base": f_n.base().to_string(),
        "coefficients": coeff_strings,
        "polynomial": f_n.to_string(),
        "n_n": n_n.to_string(),
        "central": central,
        "a_n": middle.as_ref().map(|m| m.to_string()),
        "recursion_agrees": recursion_agrees,
    });

    let mut text = String::new();
    text.push_str(&format!("class {class}, extension degree {n}\n"));
    text.push_str(&format!("f = {f_n}  over the field with {} elements\n", f_n.base()));
    text.push_str(&format!(
        "coefficients (low to high): {}\n",
        coeff_strings.join(" ")
    ));
    text.push_str(&format!("N_{n} = {n_n}\n"));
    match (&middle, recursion_agrees) {
        (Some(m), Some(agrees)) => text.push_str(&format!(
            "central: yes (a_{n} = {m}, recursion agrees: {})\n",
            yes_no(agrees)
        )),
        (Some(m), None) => text.push_str(&format!("central: yes (a_{n} = {m})\n")),
        _ => text.push_str("central: no\n"),
    }

    let header = vec![
        "a", "q", "g", "n", "base", "central", "a_n", "recursion_agrees", "n_n", "coefficients",
    ];
    let rows = vec![vec![
        class.a().to_string(),
        class.q().to_string(),
        class.g().to_string(),
        n.to_string(),
        f_n.base().to_string(),
        yes_no(central).into(),
        middle.map(|m| m.to_string()).unwrap_or_default(),
        recursion_agrees.map(|b| yes_no(b).to_string()).unwrap_or_default(),
        n_n.to_string(),
        coeff_strings.join(" "),
    ]];

    Envelope {
        command: "extend",
        inputs,
        status: Status::Ok,
        reason: None,
        results,
        text,
        csv: CsvTable { header, rows },
    }
}

// ---------------------------------------------------------------------------
// sets
// ---------------------------------------------------------------------------

fn hypotheses_json(failed: &[Hypothesis]) -> Vec<Value> {
    [
        Hypothesis::Ordinary,
        Hypothesis::PrimeAvoidsDimension,
        Hypothesis::PrimeAvoidsCharacteristic,
        Hypothesis::PrimeAvoidsUnitGroupOrder,
        Hypothesis::PositiveBaseValuation,
    ]
    .iter()
    .map(|h| json!({"hypothesis": h.to_string(), "ok": !failed.contains(h)}))
    .collect()
}

pub fn sets(ctx: &Ctx, a: &str, q: &str, g: u32, l: &str) -> Envelope {
    let mut inputs = Map::new();
    inputs.insert("a".into(), json!(a));
    inputs.insert("q".into(), json!(q));
    inputs.insert("g".into(), json!(g));
    inputs.insert("l".into(), json!(l));
    inputs.insert("nmax".into(), json!(ctx.n_max));

    let class = match parse_class(a, q, g) {
        Ok(c) => c,
        Err(reason) => return Envelope::failure("sets", inputs, reason),
    };
    let l = match parse_prime_arg(l) {
        Ok(l) => l,
        Err(reason) => return Envelope::failure("sets", inputs, reason),
    };

    let failed = failed_hypotheses(&class, &l);
    if !failed.is_empty() {
        let reason = failed
            .iter()
            .map(|h| h.failure())
            .collect::<Vec<_>>()
            .join("; ");
        let results = json!({
            "class": class_json(&class),
            "l": l.to_string(),
            "hypotheses": hypotheses_json(&failed),
        });
        let mut text = format!("class {class}, l = {l}: containment statement not applicable\n");
        for h in &failed {
            text.push_str(&format!("failed hypothesis: {}\n", h.failure()));
        }
        return Envelope {
            command: "sets",
            inputs,
            status: Status::NotApplicable,
            reason: Some(reason),
            results,
            text,
            csv: CsvTable::default(),
        };
    }

    let report = match verify_containments(&class, &l, ctx.n_max, &ctx.budget) {
        Ok(r) => r,
        Err(e) => return Envelope::failure("sets", inputs, e.to_string()),
    };
    let g_expr = growth_expression(&l, class.g());
    let c_expr = cyclic_expression(&l, class.g(), &report.omega);

    let results = json!({
        "class": class_json(&class),
        "l": l.to_string(),
        "n_max": ctx.n_max,
        "v_n1": report.base_valuation,
        "omega": report.omega.to_string(),
        "hypotheses": hypotheses_json(&failed),
        "g_members": report.g_members,
        "c_members": report.c_members,
        "thm_g_subset": report.thm_g_subset,
        "thm_c_subset": report.thm_c_subset,
        "g_expression": g_expr,
        "c_expression": c_expr,
        "g_containment_ok": report.g_containment_ok,
        "c_containment_ok": report.c_containment_ok,
        "g_violations": report.g_violations,
        "c_violations": report.c_violations,
    });

    let mut text = String::new();
    text.push_str(&format!("class {class}, l = {l}, n_max = {}\n", ctx.n_max));
    text.push_str(&format!(
        "omega = {}, v_l(N_1) = {}\n",
        report.omega, report.base_valuation
    ));
    text.push_str(&format!("growth set:          {}\n", list_string(&report.g_members)));
    text.push_str(&format!("cyclic growth set:   {}\n", list_string(&report.c_members)));
    text.push_str(&format!(
        "predicted growth subset ({g_expr}): {}\n",
        list_string(&report.thm_g_subset)
    ));
    text.push_str(&format!(
        "predicted cyclic subset ({c_expr}): {}\n",
        list_string(&report.thm_c_subset)
    ));
    text.push_str(&format!(
        "containment: growth {}, cyclic {}\n",
        yes_no(report.g_containment_ok),
        yes_no(report.c_containment_ok)
    ));

    let header = vec![
        "a", "q", "g", "l", "n_max", "v_n1", "omega", "g_members", "c_members", "thm_g_subset",
        "thm_c_subset", "g_containment_ok", "c_containment_ok", "g_expression", "c_expression",
    ];
    let rows = vec![vec![
        class.a().to_string(),
        class.q().to_string(),
        class.g().to_string(),
        l.to_string(),
        ctx.n_max.to_string(),
        report.base_valuation.to_string(),
        report.omega.to_string(),
        list_string(&report.g_members),
        list_string(&report.c_members),
        list_string(&report.thm_g_subset),
        list_string(&report.thm_c_subset),
        yes_no(report.g_containment_ok).into(),
        yes_no(report.c_containment_ok).into(),
        g_expr,
        c_expr,
    ]];

    let ok = report.g_containment_ok && report.c_containment_ok;
    Envelope {
        command: "sets",
        inputs,
        status: if ok { Status::Ok } else { Status::Error },
        reason: (!ok).then(|| "a proven containment failed; this is a bug".into()),
        results,
        text,
        csv: CsvTable { header, rows },
    }
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

/// The published example rows: class data, the printed factorization, the
/// prime, the printed order, and both printed set expressions.
struct PublishedRow {
    a: i64,
    q: u64,
    g: u32,
    factorization: &'static str,
    l: u64,
    omega: u64,
    g_expression: &'static str,
    c_expression: &'static str,
}

const PUBLISHED_ROWS: [PublishedRow; 4] = [
    PublishedRow {
        a: 1,
        q: 73,
        g: 1,
        factorization: "3*5^2",
        l: 5,
        omega: 4,
        g_expression: "5N - 2N",
        c_expression: "5N - 2N",
    },
    PublishedRow {
        a: 11,
        q: 17,
        g: 3,
        factorization: "5^2*197",
        l: 5,
        omega: 4,
        g_expression: "5N - 2N - 3N",
        c_expression: "5N - 2N - 3N",
    },
    PublishedRow {
        a: 17,
        q: 19,
        g: 3,
        factorization: "13*23^2",
        l: 23,
        omega: 22,
        g_expression: "23N - 2N - 3N",
        c_expression: "23N - 2N - 3N - 22N",
    },
    PublishedRow {
        a: 20,
        q: 7,
        g: 6,
        factorization: "2*5*7*41^2",
        l: 41,
        omega: 20,
        g_expression: "41N - 2N - 3N",
        c_expression: "41N - 2N - 3N - 20N",
    },
];

/// Expand "lN - d1N - d2N ..." to its members in `[1, n_max]`: multiples of
/// the leading modulus with every subtracted modulus's multiples removed.
fn expand_expression(expr: &str, n_max: u64) -> Result<Vec<u64>, String> {
    let mut terms = expr.split(" - ");
    let head = terms
        .next()
        .ok_or_else(|| format!("empty expression {expr:?}"))?;
    let parse_modulus = |t: &str| -> Result<u64, String> {
        t.strip_suffix('N')
            .ok_or_else(|| format!("term {t:?} does not end in N"))?
            .parse::<u64>()
            .map_err(|_| format!("term {t:?} has no integer modulus"))
    };
    let l = parse_modulus(head)?;
    let excluded: Vec<u64> = terms.map(parse_modulus).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut n = l;
    while n <= n_max {
        if excluded.iter().all(|d| n % d != 0) {
            out.push(n);
        }
        n += l;
    }
    Ok(out)
}

pub fn table(ctx: &Ctx) -> Envelope {
    let mut inputs = Map::new();
    inputs.insert("nmax".into(), json!(ctx.n_max));

    let mut rows_json = Vec::new();
    let mut text = String::new();
    let mut csv_rows = Vec::new();
    let mut all_ok = true;

    for row in &PUBLISHED_ROWS {
        let class = WeilCentralClass::new(BigInt::from(row.a), BigUint::from(row.q), row.g)
            .expect("published rows are valid classes");
        let l = BigUint::from(row.l);
        let n1 = class.base_point_count();
        let fac = factorize(&n1.to_biguint().expect("positive"), &ctx.budget)
            .expect("nonzero point count");
        let omega = mult_order(&BigInt::from(class.q_pow_g()), &l, &ctx.budget)
            .expect("l does not divide q^g in the published rows");

        let report = match verify_containments(&class, &l, ctx.n_max, &ctx.budget) {
            Ok(r) => r,
            Err(e) => return Envelope::failure("table", inputs, e.to_string()),
        };
        let expanded_g = expand_expression(row.g_expression, ctx.n_max)
            .expect("published expressions parse");
        let expanded_c = expand_expression(row.c_expression, ctx.n_max)
            .expect("published expressions parse");

        let factorization_matches = factors_string(&fac) == row.factorization;
        let omega_matches = omega == BigUint::from(row.omega);
        let expressions_match =
            expanded_g == report.thm_g_subset && expanded_c == report.thm_c_subset;
        let row_ok = factorization_matches
            && omega_matches
            && expressions_match
            && report.g_containment_ok
            && report.c_containment_ok;
        all_ok &= row_ok;

        rows_json.push(json!({
            "class": class_json(&class),
            "n1": n1.to_string(),
            "n1_factorization": factors_string(&fac),
            "published_factorization": row.factorization,
            "l": row.l,
            "omega": omega.to_string(),
            "published_omega": row.omega,
            "g_expression": row.g_expression,
            "c_expression": row.c_expression,
            "thm_g_subset": report.thm_g_subset,
            "thm_c_subset": report.thm_c_subset,
            "g_members": report.g_members,
            "c_members": report.c_members,
            "g_containment_ok": report.g_containment_ok,
            "c_containment_ok": report.c_containment_ok,
            "expressions_match": expressions_match,
            "row_ok": row_ok,
        }));

        text.push_str(&format!(
            "{class}  N = {n1} = {}  l = {}  omega = {omega}\n",
            factors_string(&fac),
            row.l
        ));
        text.push_str(&format!(
            "  growth subset:  {}  =>  {}\n",
            row.g_expression,
            list_string(&report.thm_g_subset)
        ));
        text.push_str(&format!(
            "  cyclic subset:  {}  =>  {}\n",
            row.c_expression,
            list_string(&report.thm_c_subset)
        ));
        text.push_str(&format!(
            "  verified to n_max = {}: growth {}, cyclic {}\n",
            ctx.n_max,
            yes_no(report.g_containment_ok),
            yes_no(report.c_containment_ok)
        ));

        csv_rows.push(vec![
            row.a.to_string(),
            row.q.to_string(),
            row.g.to_string(),
            row.l.to_string(),
            n1.to_string(),
            factors_string(&fac),
            omega.to_string(),
            row.g_expression.into(),
            row.c_expression.into(),
            ctx.n_max.to_string(),
            yes_no(report.g_containment_ok).into(),
            yes_no(report.c_containment_ok).into(),
            yes_no(expressions_match).into(),
        ]);
    }

    text.push_str(&format!("all rows verified: {}\n", yes_no(all_ok)));
    let results = json!({
        "n_max": ctx.n_max,
        "rows": rows_json,
        "all_verified": all_ok,
    });
    let header = vec![
        "a", "q", "g", "l", "n1", "n1_factorization", "omega", "g_expression", "c_expression",
        "n_max", "g_containment_ok", "c_containment_ok", "expressions_match",
    ];

    Envelope {
        command: "table",
        inputs,
        status: if all_ok { Status::Ok } else { Status::Error },
        reason: (!all_ok).then(|| "a published row failed verification; this is a bug".into()),
        results,
        text,
        csv: CsvTable {
            header,
            rows: csv_rows,
        },
    }
}

// ---------------------------------------------------------------------------
// ec-verify
// ---------------------------------------------------------------------------

const DEFAULT_EC_CAP: u64 = 200;

fn ec_cap() -> u64 {
    std::env::var("CYCLOGENY_EC_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_EC_CAP)
}


pub fn ec_verify(ctx: &Ctx, p_max: u64) -> Envelope {
    let mut inputs = Map::new();
    inputs.insert("pmax".into(), json!(p_max));
    inputs.insert("seed".into(), json!(ctx.seed));

    let cap = ec_cap();
    if p_max > cap {
        return Envelope::failure(
            "ec-verify",
            inputs,
            format!("pmax = {p_max} exceeds the hard cap {cap} (set CYCLOGENY_EC_CAP to raise it)"),
        );
    }
    if p_max < 5 {
        return Envelope::failure(
            "ec-verify",
            inputs,
            format!("pmax = {p_max} is below the minimum field size 5"),
        );
    }

    let primes: Vec<u64> = (5..=p_max)
        .filter(|&n| cyclogeny::arith::is_prime_u64(n))
        .collect();
    let mut censuses: Vec<Census> = Vec::with_capacity(primes.len());
    for &p in &primes {
        match class_census_seeded(p, ctx.seed) {
            Ok(c) => censuses.push(c),
            Err(e) => return Envelope::failure("ec-verify", inputs, e.to_string()),
        }
    }

    let mut total_curves = 0u64;
    let mut all_agree = true;
    let mut fields_json = Vec::new();
    let mut text = String::new();
    let mut csv_rows = Vec::new();

    for census in &censuses {
        total_curves += census.curves_processed;
        all_agree &= census.all_agree();
        let buckets: Vec<Value> = census
            .buckets
            .iter()
            .map(|b| {
                json!({
                    "a": b.a,
                    "curves": b.curves.len(),
                    "all_cyclic": b.all_cyclic,
                    "criterion_cyclic": cyclicity_str(&b.criterion_cyclic),
                    "agree": b.agrees(),
                })
            })
            .collect();
        fields_json.push(json!({
            "p": census.p,
            "curves": census.curves_processed,
            "singular_pairs": census.singular_pairs,
            "agree": census.all_agree(),
            "buckets": buckets,
        }));
        text.push_str(&format!(
            "p = {}: {} curves, {} singular pairs, buckets agree: {}\n",
            census.p,
            census.curves_processed,
            census.singular_pairs,
            yes_no(census.all_agree())
        ));
        for b in &census.buckets {
            text.push_str(&format!(
                "  a = {:>3}: {:>4} curves, all cyclic: {:<3} criterion: {:<10} agree: {}\n",
                b.a,
                b.curves.len(),
                yes_no(b.all_cyclic),
                cyclicity_str(&b.criterion_cyclic),
                yes_no(b.agrees())
            ));
            csv_rows.push(vec![
                census.p.to_string(),
                b.a.to_string(),
                (census.p + 1).checked_add_signed(b.a).expect("Hasse range").to_string(),
                b.curves.len().to_string(),
                yes_no(b.all_cyclic).into(),
                cyclicity_str(&b.criterion_cyclic).into(),
                yes_no(b.agrees()).into(),
            ]);
        }
    }
    text.push_str(&format!(
        "total: {total_curves} curves over {} fields; all buckets agree: {}\n",
        primes.len(),
        yes_no(all_agree)
    ));

    let results = json!({
        "p_max": p_max,
        "fields": fields_json,
        "total_curves": total_curves,
        "all_agree": all_agree,
    });
    let header = vec![
        "p", "a", "n", "curves", "all_cyclic", "criterion_cyclic", "agree",
    ];

    Envelope {
        command: "ec-verify",
        inputs,
        status: if all_agree { Status::Ok } else { Status::Error },
        reason: (!all_agree)
            .then(|| "a bucket disagrees with the criterion; this is a bug".into()),
        results,
        text,
        csv: CsvTable {
            header,
            rows: csv_rows,
        },
    }
}
