//! Runs a JSON-configured experiment and prints the CSV summary of the
//! result files it wrote.

use costlab::harness::{run_experiment, summarize, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = ExperimentConfig::from_json(
        r#"{
            "domain": "counter",
            "domain_params": {"k": 5, "goals": [3, 17, 30]},
            "evaluator": {"evaluator": "size"},
            "budget": {"prove": true}
        }"#,
    )?;
    let out = std::env::temp_dir().join("costlab-experiment-example");
    let runs = run_experiment(&config, &out)?;
    let files: Vec<_> = runs.iter().map(|r| r.path.clone()).collect();
    print!("{}", summarize(&files));
    Ok(())
}
