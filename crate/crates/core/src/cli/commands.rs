use regzeta::counts::{count_rational, degree, ennola_check, prime_power, ValidityFlags};
use regzeta::exactnum::{rational_string, Integer};
use regzeta::oracle::census::MAX_POLYNOMIALS;
use regzeta::oracle::field::MAX_FIELD_SIZE;
use regzeta::oracle::matrices::MAX_MATRICES;
use regzeta::oracle::{self_dual_census, type_census, CensusReport, MatrixCensus};
use regzeta::typelib::{enumerate_types, GroupForm, NType};
use regzeta::zeta::build_zeta;
use regzeta::{Error, Result};
use serde_json::{json, Value};

use super::render::{Output, Table};
use super::{Suite, TableArgs, VerifyArgs, ZetaArgs};

fn triples(ty: &NType) -> Value {
    json!(ty.triples())
}

pub fn types(n: u32) -> Result<Output> {
    let types = enumerate_types(n)?;
    let mut table = Table::new(vec!["index", "type", "entries"]);
    for (i, ty) in types.iter().enumerate() {
        table.push(vec![i.to_string(), ty.to_string(), triples(ty).to_string()]);
    }
    Ok(Output {
        command: "types",
        params: json!({ "n": n }),
        payload: json!({ "n": n, "types": types }),
        table,
        flags: Vec::new(),
        exit: 0,
    })
}

pub fn table(command: &'static str, args: &TableArgs) -> Result<Output> {
    let TableArgs { form, n, q, level } = *args;
    let flags = ValidityFlags::compute(form, n, q);
    let mut rows = Vec::new();
    let mut table = Table::new(vec!["form", "n", "q", "level", "type", "degree", "count", "flags"]);
    for ty in enumerate_types(n)? {
        let deg = degree(form, q, level, &ty)?;
        let cnt = rational_string(&count_rational(form, q, level, &ty)?);
        let names = flags.names();
        table.push(vec![
            form.to_string(),
            n.to_string(),
            q.to_string(),
            level.to_string(),
            ty.to_string(),
            deg.to_string(),
            cnt.clone(),
            names.join(";"),
        ]);
        rows.push(json!({
            "form": form,
            "n": n,
            "q": q,
            "level": level,
            "type": triples(&ty),
            "degree": deg.to_string(),
            "count": cnt,
            "flags": names,
        }));
    }
    Ok(Output {
        command,
        params: json!({ "form": form, "n": n, "q": q, "level": level }),
        payload: json!({ "rows": rows }),
        table,
        flags: flags.names(),
        exit: 0,
    })
}

pub fn zeta(args: &ZetaArgs) -> Result<Output> {
    let z = build_zeta(args.form, args.n, args.q)?;
    let abscissa = z.abscissa().map(|a| rational_string(&a));
    let mut params = json!({ "form": args.form, "n": args.n, "q": args.q });
    let (payload, table) = if let Some(s) = args.s {
        params["s"] = json!(s.to_string());
        let value = z.evaluate(s)?;
        let mut table = Table::new(vec!["s", "value"]);
        table.push(vec![s.to_string(), value.to_string()]);
        (json!({ "s": s.to_string(), "value": value.to_string(), "abscissa": abscissa }), table)
    } else if let Some(m) = &args.truncate {
        params["truncate"] = json!(m);
        let bound: Integer = m
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("--truncate expects an integer, got {m:?}")))?;
        let slice = z.dirichlet_coeffs(&bound)?;
        let mut table = Table::new(vec!["degree", "count"]);
        for (d, c) in &slice.coeffs {
            table.push(vec![d.to_string(), c.to_string()]);
        }
        (serde_json::to_value(&slice).expect("slices serialize"), table)
    } else {
        let mut table = Table::new(vec!["type", "c", "D"]);
        for t in &z.terms {
            table.push(vec![t.ty.to_string(), rational_string(&t.coefficient), t.base_degree.to_string()]);
        }
        (serde_json::to_value(&z).expect("zeta expressions serialize"), table)
    };
    Ok(Output { command: "zeta", params, payload, table, flags: z.flags.names(), exit: 0 })
}

pub fn ennola(n: u32, level: u32) -> Result<Output> {
    let mut rows = Vec::new();
    let mut table = Table::new(vec!["type", "level", "holds", "gl", "gu"]);
    let mut all = true;
    for ty in enumerate_types(n)? {
        let report = ennola_check(level, &ty)?;
        all &= report.holds;
        table.push(vec![
            ty.to_string(),
            level.to_string(),
            report.holds.to_string(),
            report.gl_poly.to_string(),
            report.gu_poly.to_string(),
        ]);
        rows.push(json!({
            "type": triples(&ty),
            "level": level,
            "holds": report.holds,
            "gl": report.gl_poly.to_string(),
            "gu": report.gu_poly.to_string(),
        }));
    }
    Ok(Output {
        command: "ennola",
        params: json!({ "n": n, "level": level }),
        payload: json!({ "rows": rows, "pass": all }),
        table,
        flags: Vec::new(),
        exit: if all { 0 } else { 1 },
    })
}

fn within(base: u64, exponent: u32, limit: u64) -> bool {
    base.checked_pow(exponent).is_some_and(|v| v <= limit)
}

/// Rejects parameter combinations that would exceed an oracle guard before
/// any enumeration starts.
fn validate(args: &VerifyArgs) -> Result<()> {
    let max_n = args.max_n;
    if max_n == 0 {
        return Err(Error::InvalidArgument("--max-n must be at least 1".into()));
    }
    if args.q_list.is_empty() {
        return Err(Error::InvalidArgument("--q-list is empty".into()));
    }
    enumerate_types(max_n)?;
    let polys = args.suite != Suite::Matrices;
    let matrices = args.suite != Suite::Polys;
    for &q in &args.q_list {
        prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if !within(q, 2, MAX_FIELD_SIZE) {
            return Err(Error::bound("field size", format!("{q}^2"), MAX_FIELD_SIZE));
        }
        if polys {
            let base = if q % 2 == 1 { q * q } else { q };
            if !within(base, max_n, MAX_POLYNOMIALS) {
                return Err(Error::bound("monic polynomials", format!("{base}^{max_n}"), MAX_POLYNOMIALS));
            }
        }
        if matrices {
            if q % 2 == 0 {
                return Err(Error::InvalidArgument(format!("matrix oracles need odd q, got {q}")));
            }
            if !within(q, max_n * max_n, MAX_MATRICES) {
                return Err(Error::bound("matrices", format!("{q}^{}", max_n * max_n), MAX_MATRICES));
            }
        }
    }
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> Result<Output> {
    validate(args)?;
    let mut reports: Vec<CensusReport> = Vec::new();
    for &q in &args.q_list {
        if args.suite != Suite::Matrices {
            for n in 1..=args.max_n {
                reports.push(type_census(n, q)?);
            }
            reports.push(self_dual_census(args.max_n, q)?);
        }
        if args.suite != Suite::Polys {
            for n in 1..=args.max_n {
                for form in [GroupForm::GL, GroupForm::GU] {
                    let census = MatrixCensus::run(form, n, q, args.sample_cap)?;
                    reports.push(census.centralizer_report()?);
                    reports.push(census.det_index_report());
                    // the trace-zero census is predicted only when p does not divide n
                    let special = if form.is_unitary() { GroupForm::SU } else { GroupForm::SL };
                    if !ValidityFlags::compute(special, n, q).p_divides_n {
                        reports.push(MatrixCensus::run(special, n, q, args.sample_cap)?.centralizer_report()?);
                    }
                }
            }
        }
    }
    if !args.timing {
        reports = reports.into_iter().map(CensusReport::without_timing).collect();
    }
    let pass = reports.iter().all(|r| r.pass);

    let mut table = Table::new(vec!["check", "form", "n", "q", "row", "expected", "observed", "pass"]);
    for r in &reports {
        let json = serde_json::to_value(r).expect("reports serialize");
        let form = r.form.map(|f| f.to_string()).unwrap_or_default();
        for row in json["rows"].as_array().into_iter().flatten() {
            let label = match row.get("type") {
                Some(ty) => ty["entries"].to_string(),
                None => format!("degree {}", row["degree"]),
            };
            let field = |key: &str| match &row[key] {
                Value::String(s) => s.clone(),
                Value::Null => String::new(),
                other => other.to_string(),
            };
            let expected = field("expected");
            let observed = if row.get("count").is_some() { field("count") } else { field("observed") };
            table.push(vec![
                json["check"].as_str().unwrap_or_default().to_string(),
                form.clone(),
                r.n.to_string(),
                r.q.to_string(),
                label,
                expected,
                observed,
                row["pass"].to_string(),
            ]);
        }
    }
    let suite = match args.suite {
        Suite::Polys => "polys",
        Suite::Matrices => "matrices",
        Suite::All => "all",
    };
    let params = json!({
        "suite": suite,
        "max_n": args.max_n,
        "q_list": args.q_list.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "sample_cap": args.sample_cap,
    });
    Ok(Output {
        command: "verify",
        params,
        payload: json!({ "reports": reports, "pass": pass }),
        table,
        flags: Vec::new(),
        exit: if pass { 0 } else { 1 },
    })
}
