use crate::render::Output;
use crate::{Cli, Command, Failure};
use rand::rngs::StdRng;
use rand::SeedableRng;
use redei_core::conic::{distinct_solutions, ConicOptions, ConicSolution};
use redei_core::golden::{verify_field, verify_paper, GoldenCheck};
use redei_core::magnus::sample::{random_depth3_word, random_word};
use redei_core::magnus::{d8_translate, expand, mu2, mu2_fox, mu2_validated, rho, zassenhaus_depth, FreeWord, MultiIndex};
use redei_core::massey::{triple_massey_pairing, CochainFunctional};
use redei_core::redei::{
    build_redei_with, integrality_witnesses, reference_witnesses, triple_report_with, ReferenceExample, WitnessCheck,
};
use redei_core::residue::{dyadic_hilbert, hilbert_symbol, local_symbols, place_symbol, quad_symbol};
use redei_core::ring::{class_numbers, fundamental_unit};
use redei_core::search::{search_with_cache, Cache, SearchOptions, CSV_HEADER};
use redei_core::{Place, PrimeIdeal, QuadField, RingElement};
use serde_json::json;

type Outcome = Result<(Output, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn field(cli: &Cli) -> Result<QuadField, Failure> {
    QuadField::new(cli.p).map_err(|e| usage(e.to_string()))
}

fn element(k: QuadField, s: &str) -> Result<RingElement, Failure> {
    Ok(k.parse(s)?)
}

fn ideal(k: QuadField, s: &str) -> Result<PrimeIdeal, Failure> {
    Ok(PrimeIdeal::parse(k, s)?)
}

fn place(k: QuadField, s: &str) -> Result<Place, Failure> {
    Ok(match s {
        "inf1" => Place::Infinite1,
        "inf2" => Place::Infinite2,
        _ => Place::Finite(ideal(k, s)?),
    })
}

fn conic_options(cli: &Cli) -> ConicOptions {
    ConicOptions {
        height_bound: cli.height_bound,
        avoid: None,
    }
}

fn ok(out: Output) -> Outcome {
    Ok((out, true))
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Unit => unit(cli),
        Command::Classno => classno(cli),
        Command::Symbol { a, place } => symbol(cli, a, place),
        Command::Hilbert { a, b, place } => hilbert(cli, a, b, place.as_deref()),
        Command::Conic { pi1, pi2, count, avoid } => conic(cli, pi1, pi2, *count, avoid.as_deref()),
        Command::Redei { p1, p2, example } => redei(cli, p1.as_deref(), p2.as_deref(), example.as_deref()),
        Command::Triple { p1, p2, p3 } => triple(cli, p1, p2, p3),
        Command::Magnus { word, rank, index } => magnus(cli, word.as_deref(), *rank, index.as_deref()),
        Command::Massey {
            word,
            rank,
            lambda1,
            lambda2,
        } => massey(cli, word.as_deref(), *rank, lambda1, lambda2),
        Command::Search => search(cli),
        Command::VerifyPaper => verify(cli),
    }
}

fn unit(cli: &Cli) -> Outcome {
    let u = fundamental_unit(field(cli)?);
    ok(Output::fields(
        json!(u),
        vec![
            ("p", cli.p.to_string()),
            ("epsilon", u.fundamental_unit.to_string()),
            ("norm", u.unit_norm.to_string()),
        ],
    ))
}

fn classno(cli: &Cli) -> Outcome {
    let c = class_numbers(field(cli)?);
    ok(Output::fields(
        json!(c),
        vec![("p", cli.p.to_string()), ("h", c.h.to_string()), ("h_plus", c.h_plus.to_string())],
    ))
}

fn symbol(cli: &Cli, a: &str, at: &str) -> Outcome {
    let k = field(cli)?;
    let a = element(k, a)?;
    let v = match place(k, at)? {
        Place::Finite(i) => quad_symbol(&a, &i)?,
        inf => place_symbol(&a, &inf)?,
    };
    ok(Output::fields(
        json!({ "a": a, "place": at, "symbol": v }),
        vec![("a", a.to_string()), ("place", at.to_string()), ("symbol", v.to_string())],
    ))
}

fn hilbert(cli: &Cli, a: &str, b: &str, at: Option<&str>) -> Outcome {
    let k = field(cli)?;
    let (a, b) = (element(k, a)?, element(k, b)?);
    let locals: Vec<(String, i8)> = match at {
        Some("dyadic") => vec![("dyadic".into(), dyadic_hilbert(&a, &b)?)],
        Some(s) => vec![(s.to_string(), hilbert_symbol(&a, &b, &place(k, s)?)?)],
        None => local_symbols(&a, &b)?.into_iter().map(|l| (l.place, l.value)).collect(),
    };
    let json = json!(locals.iter().map(|(p, v)| json!({ "place": p, "value": v })).collect::<Vec<_>>());
    let rows = locals.iter().map(|(p, v)| vec![p.clone(), v.to_string()]).collect();
    ok(Output::new(json, &["place", "value"], rows))
}

fn solution_row(s: &ConicSolution) -> Vec<String> {
    vec![
        s.x.to_string(),
        s.y.to_string(),
        s.z.to_string(),
        s.primitive.to_string(),
        s.y_even.to_string(),
        s.xy_normalized.to_string(),
    ]
}

const SOLUTION_HEADER: [&str; 6] = ["x", "y", "z", "primitive", "y_even", "xy_normalized"];

fn conic(cli: &Cli, pi1: &str, pi2: &str, count: usize, avoid: Option<&str>) -> Outcome {
    let k = field(cli)?;
    let (pi1, pi2) = (element(k, pi1)?, element(k, pi2)?);
    let opts = ConicOptions {
        avoid: avoid.map(|s| ideal(k, s)).transpose()?,
        ..conic_options(cli)
    };
    let sols = distinct_solutions(&pi1, &pi2, count, &opts)?;
    let rows = sols.iter().map(solution_row).collect();
    ok(Output::new(json!(sols), &SOLUTION_HEADER, rows))
}

fn witness_output(json: serde_json::Value, mut rows: Vec<Vec<String>>, checks: &[WitnessCheck]) -> Outcome {
    for c in checks {
        rows.push(vec![c.name.clone(), if c.ok { "PASS" } else { "FAIL" }.into()]);
    }
    let passed = checks.iter().all(|c| c.ok);
    Ok((Output::new(json, &["field", "value"], rows), passed))
}

fn redei(cli: &Cli, p1: Option<&str>, p2: Option<&str>, example: Option<&str>) -> Outcome {
    if let Some(name) = example {
        let ex = ReferenceExample::ALL
            .into_iter()
            .find(|e| e.name().chars().filter(char::is_ascii_digit).collect::<String>() == name.replace(['-', ',', ' '], ""))
            .ok_or_else(|| usage(format!("unknown example {name}; expected 29-13 or 29-89")))?;
        let checks = reference_witnesses(ex)?;
        let json = json!({ "example": ex.name(), "alpha1": ex.alpha1(), "witnesses": checks });
        let rows = vec![vec!["example".into(), ex.name().into()], vec!["alpha1".into(), ex.alpha1().into()]];
        return witness_output(json, rows, &checks);
    }
    let (Some(p1), Some(p2)) = (p1, p2) else {
        return Err(usage("redei needs two primes or --example"));
    };
    let k = field(cli)?;
    let data = build_redei_with(&ideal(k, p1)?, &ideal(k, p2)?, &conic_options(cli))?;
    let checks = integrality_witnesses(&data)?;
    let mut rows = vec![
        vec!["pi1".into(), data.pi1.to_string()],
        vec!["pi2".into(), data.pi2.to_string()],
        vec!["alpha1".into(), data.alpha1.to_string()],
    ];
    for (i, t) in data.tower().into_iter().enumerate() {
        rows.push(vec![format!("layer {}", i + 1), t]);
    }
    if let Some(c) = &data.composite {
        rows.push(vec!["rational alpha1".into(), format!("{} + {}√{}", c.x, c.y, c.p1)]);
    }
    let json = json!({ "redei": data, "tower": data.tower(), "witnesses": checks });
    witness_output(json, rows, &checks)
}

fn triple(cli: &Cli, p1: &str, p2: &str, p3: &str) -> Outcome {
    let k = field(cli)?;
    let (p1, p2, p3) = (ideal(k, p1)?, ideal(k, p2)?, ideal(k, p3)?);
    let r = triple_report_with(&p1, &p2, &p3, &conic_options(cli))?;
    let sol = &r.solution;
    ok(Output::fields(
        json!(r),
        vec![
            ("p1", r.p1.to_string()),
            ("p2", r.p2.to_string()),
            ("p3", r.p3.to_string()),
            ("pi1", r.p1.generator().to_string()),
            ("pi2", r.p2.generator().to_string()),
            ("pi3", r.p3.generator().to_string()),
            ("symbol", r.symbol.to_string()),
            ("s", r.s.clone()),
            ("u", r.u.clone()),
            ("x", sol.x.to_string()),
            ("y", sol.y.to_string()),
            ("z", sol.z.to_string()),
        ],
    ))
}

fn word_arg(cli: &Cli, word: Option<&str>, rank: usize, depth3: bool) -> Result<FreeWord, Failure> {
    match (word, cli.seed) {
        (Some(w), _) => Ok(FreeWord::parse(rank, w)?),
        (None, Some(seed)) => {
            let mut rng = StdRng::seed_from_u64(seed);
            Ok(if depth3 {
                random_depth3_word(&mut rng, rank)
            } else {
                random_word(&mut rng, rank, 8)
            })
        }
        (None, None) => Err(usage("give a word or --seed")),
    }
}

fn magnus(cli: &Cli, word: Option<&str>, rank: usize, index: Option<&str>) -> Outcome {
    if rank == 0 || rank > 255 {
        return Err(usage("rank must be between 1 and 255"));
    }
    let w = word_arg(cli, word, rank, false)?;
    if let Some(idx) = index {
        let idx = MultiIndex::parse(idx)?;
        if idx.0.iter().any(|&i| i as usize > rank || i == 0) {
            return Err(usage(format!("index {idx} out of range for rank {rank}")));
        }
        let value = mu2_validated(&idx, &w)?;
        let (coeff, fox) = (mu2(&idx, &w), mu2_fox(&idx, &w));
        return ok(Output::fields(
            json!({ "word": w.to_string(), "index": idx.to_string(), "mu": value, "coefficient": coeff, "fox": fox }),
            vec![
                ("word", w.to_string()),
                ("index", idx.to_string()),
                ("mu", u8::from(value).to_string()),
                ("coefficient", u8::from(coeff).to_string()),
                ("fox", u8::from(fox).to_string()),
            ],
        ));
    }
    let series = expand(&w, cli.truncation);
    let depth = zassenhaus_depth(&w, cli.truncation);
    let mut fields = vec![
        ("word", w.to_string()),
        ("expansion", series.to_string()),
        ("depth", depth.to_string()),
    ];
    let mut json = json!({
        "word": w.to_string(),
        "truncation": cli.truncation,
        "support": series.support().iter().map(|i| i.to_string()).collect::<Vec<_>>(),
        "depth": depth.to_string(),
    });
    if rank >= 2 {
        let m = rho(&w);
        fields.push(("rho", m.to_string()));
        fields.push(("d8", d8_translate(&m).to_string()));
        json["rho"] = json!(m);
        json["d8"] = json!(d8_translate(&m).to_string());
    }
    ok(Output::fields(json, fields))
}

fn massey(cli: &Cli, word: Option<&str>, rank: usize, lambda1: &str, lambda2: &str) -> Outcome {
    if !(3..=255).contains(&rank) {
        return Err(usage("massey needs rank at least 3"));
    }
    let w = word_arg(cli, word, rank, true)?;
    let (l1, l2) = (CochainFunctional::parse(lambda1)?, CochainFunctional::parse(lambda2)?);
    let v = triple_massey_pairing(&w, &l1, &l2)?;
    ok(Output::fields(
        json!({ "word": w.to_string(), "lambda1": l1.to_string(), "lambda2": l2.to_string(), "pairing": u8::from(v) }),
        vec![
            ("word", w.to_string()),
            ("lambda1", l1.to_string()),
            ("lambda2", l2.to_string()),
            ("pairing", u8::from(v).to_string()),
        ],
    ))
}

fn search(cli: &Cli) -> Outcome {
    let k = field(cli)?;
    let opts = SearchOptions {
        norm_bound: cli.norm_bound,
        jobs: cli.jobs,
        height_bound: cli.height_bound,
    };
    let cache = cli.out.as_ref().map(Cache::new);
    let records = search_with_cache(k, &opts, cache.as_ref())?;
    let rows = records.iter().map(|r| r.csv_row().to_vec()).collect();
    ok(Output::new(json!(records), &CSV_HEADER, rows))
}

fn verify(cli: &Cli) -> Outcome {
    let k = field(cli)?;
    let checks: Vec<GoldenCheck> = if cli.p == 5 { verify_paper() } else { verify_field(k) };
    let passed = checks.iter().all(|c| c.pass);
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.expected.clone(),
                c.actual.clone(),
                if c.pass { "PASS" } else { "FAIL" }.into(),
            ]
        })
        .collect();
    Ok((Output::new(json!(checks), &["check", "expected", "actual", "result"], rows), passed))
}
