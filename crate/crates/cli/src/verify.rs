use serde::Deserialize;
use subset_base::verify::check_base;
use subset_base::BaseFamily;

use crate::exit::{Failure, Outcome};
use crate::VerifyArgs;

#[derive(Deserialize)]
#[serde(untagged)]
enum Input {
    Document { n: Option<u64>, sets: Vec<Vec<u32>> },
    Bare(Vec<Vec<u32>>),
}

fn render(set: &[u32]) -> String {
    let items: Vec<String> = set.iter().map(u32::to_string).collect();
    format!("{{{}}}", items.join(","))
}

pub fn run(args: &VerifyArgs) -> Outcome {
    let spec = args.action.spec(!args.at_most_r)?;
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", args.input.display())))?;
    let input: Input = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("malformed family JSON: {e}")))?;
    let sets = match input {
        Input::Document { n: Some(n), .. } if n != spec.n => {
            return Err(Failure::Input(format!(
                "file is for n = {n} but --n is {}",
                spec.n
            )))
        }
        Input::Document { sets, .. } | Input::Bare(sets) => sets,
    };
    let n = u32::try_from(spec.n).map_err(|_| Failure::Input("n too large".into()))?;
    let family = BaseFamily::new(n, sets)?;
    let report = check_base(&family, &spec)?;

    if report.is_base {
        println!("base for {spec}: {} sets", family.len());
        return Ok(());
    }
    println!("not a base for {spec}");
    for (i, j) in &report.duplicate_sets {
        println!("duplicate sets: #{} and #{}", i + 1, j + 1);
    }
    let blocks = report.offending_blocks();
    if !blocks.is_empty() {
        let shown: Vec<String> = blocks.iter().map(|b| render(b)).collect();
        println!("points with equal neighbourhoods: {}", shown.join(" "));
    }
    Err(Failure::Invalid(format!("family is not a base for {spec}")))
}
