use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// A mathematical check did not hold.
    Failed { message: String },
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, results: Value, status: Status) -> Self {
        RunReport { schema: SCHEMA, command: command.to_string(), inputs, results, status }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::Failed { .. } => 1,
            Status::Error { .. } => 2,
        }
    }
}
