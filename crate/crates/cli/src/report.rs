//! One report per invocation, rendered as JSON, TSV or plain text.
//!
//! Every rendering carries the tool version, the field and the seed. Nothing
//! time-dependent is ever rendered.

use serde_json::{json, Value};

use crate::{Format, SessionArgs, VERSION};

pub struct Report {
    pub command: &'static str,
    /// False when a verification failed; maps to exit code 1.
    pub passed: bool,
    pub json: Value,
    pub pretty: Vec<String>,
    pub tsv: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &'static str, json: Value) -> Report {
        Report {
            command,
            passed: true,
            json,
            pretty: Vec::new(),
            tsv: Vec::new(),
        }
    }

    pub fn render(&self, session: &SessionArgs) -> String {
        match session.format {
            Format::Json => {
                let envelope = json!({
                    "tool": "apolar",
                    "version": VERSION,
                    "command": self.command,
                    "field": session.field.to_string(),
                    "seed": session.seed,
                    "passed": self.passed,
                    "report": self.json,
                });
                let mut text = serde_json::to_string_pretty(&envelope).expect("serializable report");
                text.push('\n');
                text
            }
            Format::Tsv => {
                let mut text = format!(
                    "# apolar\t{VERSION}\t{}\tfield={}\tseed={}\n",
                    self.command, session.field, session.seed
                );
                for row in &self.tsv {
                    text.push_str(&row.join("\t"));
                    text.push('\n');
                }
                text
            }
            Format::Pretty => {
                let mut text = format!(
                    "# apolar {VERSION} {} field={} seed={}\n",
                    self.command, session.field, session.seed
                );
                for line in &self.pretty {
                    text.push_str(line);
                    text.push('\n');
                }
                text
            }
        }
    }
}
