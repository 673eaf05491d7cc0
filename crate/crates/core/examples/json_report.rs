// Drives the command-line interface in-process and reads its JSON report.

use kummer::cli::{run as run_cli, EXIT_OK};
use serde_json::Value;

pub fn run() -> Result<Value, String> {
    let outcome = run_cli(["kummer", "eval-theta", "--tau", "[[i]]", "--z", "[0]"]);
    if outcome.code != EXIT_OK {
        return Err(outcome.message.unwrap_or_default());
    }
    print!("{}", outcome.document);
    serde_json::from_str(&outcome.document).map_err(|e| e.to_string())
}

#[allow(dead_code)]
fn main() -> Result<(), String> {
    run().map(|_| ())
}
