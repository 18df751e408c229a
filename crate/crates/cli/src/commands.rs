use crate::{Cli, Command, EXIT_OK, EXIT_UNCONFIRMED};
use clap::ValueEnum;
use kgraph::averaging::{dixmier_average, replay};
use kgraph::census::{enumerate_census, CensusRow};
use kgraph::io::{
    parse_element, word_from_json, word_to_json, GraphSpec, WitnessJson, WordJson,
};
use kgraph::lattice::{closed_formula_agrees, intrinsic_group, spectrum_generator, Spectrum};
use kgraph::rational::{decimal, format, parse};
use kgraph::{
    classify_type, validate_kgraph, AveragingSchedule, Degree, Error, KGraph, Periodicity, Result,
};
use serde_json::{json, Value};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn graph_spec(path: &Path) -> Result<GraphSpec> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(e.to_string()))
}

fn load_graph(path: &Path) -> Result<KGraph> {
    graph_spec(path)?.to_graph()
}

fn parse_word(g: &KGraph, text: &str) -> Result<kgraph::NormalWord> {
    let w: WordJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    word_from_json(g, &w)
}

fn parse_list(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not a list of integers: {text:?}")))
        })
        .collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

/// Runs the command and returns its output with the exit code.
pub fn run(cli: &Cli) -> Result<(String, u8)> {
    let eps = parse(&cli.eps)?;
    let out = match &cli.command {
        Command::Validate { graph } => {
            let spec = graph_spec(graph)?;
            let violations = validate_kgraph(spec.k, spec.m.clone(), spec.theta_family()?)?;
            if !violations.is_empty() {
                return Err(Error::Cubic(violations));
            }
            json!({"valid": true, "k": spec.k, "m": spec.m})
        }
        Command::NormalForm { graph, word } => {
            let g = load_graph(graph)?;
            let w = parse_word(&g, word)?;
            json!({"word": word_to_json(&w), "degree": g.degree_of(&w)})
        }
        Command::LambdaMin { graph, mu, nu } => {
            let g = load_graph(graph)?;
            let (mu, nu) = (parse_word(&g, mu)?, parse_word(&g, nu)?);
            let set = g.lambda_min(&mu, &nu);
            let pairs: Vec<Value> = set
                .pairs
                .iter()
                .map(|(x, y)| json!({"xi": word_to_json(x), "eta": word_to_json(y)}))
                .collect();
            json!({"count": pairs.len(), "pairs": pairs})
        }
        Command::Lpb { graph, maxdeg } => {
            let g = load_graph(graph)?;
            let r = g.check_little_pullback();
            let witness = r.witness.map(|(e, f)| {
                json!([[e.colour + 1, e.index + 1], [f.colour + 1, f.index + 1]])
            });
            let mut v = json!({"lpb": r.holds, "witness": witness});
            if let Some(d) = maxdeg {
                let d = Degree(parse_list(d)?);
                if d.k() != g.k() {
                    return Err(Error::Degree(format!("degree bound needs {} entries", g.k())));
                }
                let a = g.check_singly_aligned(&d);
                v["singly_aligned"] = json!({
                    "holds": a.holds,
                    "maxdeg": d,
                    "witness": a.witness.map(|(x, y)| json!([word_to_json(&x), word_to_json(&y)])),
                });
            }
            v
        }
        Command::Periodicity { graph } => {
            let g = load_graph(graph)?;
            match g.check_periodicity(cli.periodicity_bound)? {
                Periodicity::Periodic(w) => {
                    json!({"periodic": true, "witness": to_value(&WitnessJson::from(&w))})
                }
                Periodicity::AperiodicUpTo { bound, skipped } => json!({
                    "periodic": false,
                    "aperiodic_up_to": bound,
                    "skipped": skipped,
                }),
            }
        }
        Command::IntrinsicGroup { m } => {
            let m: Vec<u64> = parse_list(m)?.into_iter().map(u64::from).collect();
            let group = intrinsic_group(&m)?;
            let spectrum = match spectrum_generator(&m)? {
                Spectrum::Dense => json!("Dense"),
                Spectrum::Cyclic { base, exp } => json!({
                    "Cyclic": {"base": base, "exp": exp},
                    "lambda": format(&kgraph::lattice::lambda_value(base, exp)),
                    "lambda_decimal": decimal(&kgraph::lattice::lambda_value(base, exp), 20),
                }),
            };
            json!({
                "rank": group.rank,
                "basis": group.basis,
                "spectrum": spectrum,
                "closed_formula_agrees": closed_formula_agrees(&m)?,
            })
        }
        Command::Classify { graph } => {
            let g = load_graph(graph)?;
            to_value(&classify_type(&g, cli.periodicity_bound)?)
        }
        Command::KmsCheck { a, b } => {
            let a = parse_element(&read(a)?, cli.max_terms)?;
            let b = parse_element(&read(b)?, cli.max_terms)?;
            if a.graph() != b.graph() {
                return Err(Error::GraphMismatch);
            }
            let r = a.kms_check(&b)?;
            let mut v = to_value(&r);
            v["lhs_decimal"] = json!(decimal(&r.lhs, 20));
            v
        }
        Command::Dixmier { element, schedule_out } => {
            let a = parse_element(&read(element)?, cli.max_terms)?;
            let out = dixmier_average(&a, &eps)?;
            let schedule = to_value(&out.schedule);
            if let Some(path) = schedule_out {
                std::fs::write(path, pretty(&schedule))
                    .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            }
            json!({
                "scalar": format(&out.scalar),
                "scalar_decimal": decimal(&out.scalar, 20),
                "omega": format(&a.omega()),
                "residual_bound": format(&out.residual_bound),
                "eps": format(&eps),
                "steps": out.schedule.steps.len(),
                "schedule": schedule,
            })
        }
        Command::Census { k, m, format: fmt, cap } => {
            let m = parse_list(m)?;
            if m.len() != *k {
                return Err(Error::Structural(format!("expected {k} edge counts, got {}", m.len())));
            }
            let census = enumerate_census(&m, cli.periodicity_bound, *cap)?;
            if *fmt == Format::Csv {
                return Ok((csv_table(&census.rows)?, EXIT_OK));
            }
            to_value(&census)
        }
        Command::Replay { schedule } => {
            let s: AveragingSchedule =
                serde_json::from_str(&read(schedule)?).map_err(|e| Error::Parse(e.to_string()))?;
            let report = replay(&s, cli.max_terms)?;
            let code = if report.confirmed { EXIT_OK } else { EXIT_UNCONFIRMED };
            return Ok((pretty(&to_value(&report)), code));
        }
    };
    Ok((pretty(&out), EXIT_OK))
}

fn csv_table(rows: &[CensusRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(CensusRow::CSV_HEADER).map_err(io)?;
    for row in rows {
        w.write_record(row.csv_record()).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8").trim_end().to_string())
}
