use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Item {
    pub fn pass(name: impl Into<String>) -> Self {
        Item {
            name: name.into(),
            status: Status::Pass,
            anchor: None,
            cases: None,
            witness: None,
        }
    }

    pub fn verdict(name: impl Into<String>, ok: bool) -> Self {
        Item {
            status: if ok { Status::Pass } else { Status::Fail },
            ..Item::pass(name)
        }
    }

    pub fn error(name: impl Into<String>, message: impl Into<String>) -> Self {
        Item {
            status: Status::Error,
            witness: Some(Value::String(message.into())),
            ..Item::pass(name)
        }
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }
}

/// Accumulates the cases of one law and keeps the first counterexample.
pub struct Law {
    name: String,
    anchor: String,
    cases: usize,
    witness: Option<Value>,
}

impl Law {
    pub fn new(name: &str, anchor: &str) -> Self {
        Law {
            name: name.to_string(),
            anchor: anchor.to_string(),
            cases: 0,
            witness: None,
        }
    }

    pub fn check(&mut self, holds: bool, witness: impl FnOnce() -> Value) {
        self.cases += 1;
        if !holds && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    /// Records `cases` cases at once, all passing unless `holds` is false.
    pub fn absorb(&mut self, cases: usize, holds: bool, witness: impl FnOnce() -> Value) {
        self.cases += cases.saturating_sub(1);
        self.check(holds, witness);
    }

    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }

    pub fn finish(self) -> Item {
        Item {
            name: self.name,
            status: if self.witness.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            anchor: Some(self.anchor),
            cases: Some(self.cases),
            witness: self.witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub seed: u64,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str, seed: u64, items: Vec<Item>, result: Option<Value>) -> Self {
        let status = if items.iter().any(|i| i.status == Status::Error) {
            Status::Error
        } else if items.iter().any(|i| i.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        Report {
            command: command.to_string(),
            status,
            seed,
            items,
            result,
            timing_ms: 0,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
