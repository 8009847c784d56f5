//! Client side of the external-model protocol.
//!
//! The server is any command that speaks newline-delimited JSON on its
//! stdin/stdout:
//!
//! ```text
//! server -> {"ready": true, "protocol": 1}
//! client -> {"id": 1, "todo_tokens": [...], "diff_tokens": [...]}
//! server -> {"id": 1, "form_probs": [p_task, p_notice], "quality_probs": [p_good, p_bad]}
//!        or {"id": 1, "error": "message"}
//! ```
//!
//! One request is in flight at a time. Probability pairs must lie in [0, 1]
//! and sum to 1 within [`SUM_TOLERANCE`]; accepted pairs are rescaled to sum
//! to exactly 1 before labels are decided.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Classifier, ClassifyError, Verdict, VerdictSource};
use crate::normalize::{NormalizedDiff, NormalizedTodo};

pub const PROTOCOL_VERSION: u32 = 1;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);
pub const SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum BridgeError {
    #[error("could not start bridge command: {0}")]
    Spawn(std::io::Error),
    #[error("bridge process closed the pipe")]
    BrokenPipe,
    #[error("bridge did not answer within {0:?}")]
    Timeout(Duration),
    #[error("malformed bridge message: {0}")]
    Malformed(String),
    #[error("bridge handshake failed: {0}")]
    Handshake(String),
    #[error("{field} probabilities {probs:?} are not a distribution")]
    ProbabilitySum { field: &'static str, probs: Vec<f64> },
    #[error("bridge reported an error: {0}")]
    Remote(String),
}

#[derive(Debug, Serialize)]
struct Request<'a> {
    id: u64,
    todo_tokens: &'a [String],
    diff_tokens: &'a [String],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Response {
    id: u64,
    #[serde(default)]
    form_probs: Option<Vec<f64>>,
    #[serde(default)]
    quality_probs: Option<Vec<f64>>,
    #[serde(default)]
    error: Option<String>,
}

#[derive(Debug, Deserialize)]
struct Handshake {
    ready: bool,
    protocol: u32,
}

enum Line {
    Text(String),
    Eof,
}

pub struct BridgeHandle {
    child: Child,
    stdin: Option<ChildStdin>,
    lines: Receiver<Line>,
    timeout: Duration,
    next_id: u64,
}

/// Checks a probability pair and rescales it to sum to 1.
pub fn validate_pair(field: &'static str, probs: &[f64]) -> Result<[f64; 2], BridgeError> {
    let bad = || BridgeError::ProbabilitySum {
        field,
        probs: probs.to_vec(),
    };
    let [a, b] = probs else { return Err(bad()) };
    if !(a.is_finite() && b.is_finite() && (0.0..=1.0).contains(a) && (0.0..=1.0).contains(b)) {
        return Err(bad());
    }
    let sum = a + b;
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(bad());
    }
    let p0 = a / sum;
    Ok([p0, 1.0 - p0])
}

impl BridgeHandle {
    /// Starts `command` through `sh -c` and waits for its handshake.
    pub fn spawn(command: &str, timeout: Duration) -> Result<Self, BridgeError> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(BridgeError::Spawn)?;
        let stdout = child.stdout.take().expect("stdout piped");
        let stdin = child.stdin.take();
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            let mut reader = BufReader::new(stdout);
            loop {
                let mut buf = String::new();
                match reader.read_line(&mut buf) {
                    Ok(0) | Err(_) => {
                        let _ = tx.send(Line::Eof);
                        return;
                    }
                    Ok(_) => {
                        if tx.send(Line::Text(buf)).is_err() {
                            return;
                        }
                    }
                }
            }
        });
        let mut handle = BridgeHandle {
            child,
            stdin,
            lines: rx,
            timeout,
            next_id: 1,
        };
        let line = handle.read_line().map_err(|e| match e {
            BridgeError::BrokenPipe => BridgeError::Handshake("process exited before handshake".into()),
            other => other,
        })?;
        let hs: Handshake = serde_json::from_str(line.trim()).map_err(|e| BridgeError::Handshake(format!("{e}: {}", line.trim())))?;
        if !hs.ready || hs.protocol != PROTOCOL_VERSION {
            return Err(BridgeError::Handshake(format!("ready={} protocol={}", hs.ready, hs.protocol)));
        }
        Ok(handle)
    }

    fn read_line(&mut self) -> Result<String, BridgeError> {
        loop {
            match self.lines.recv_timeout(self.timeout) {
                Ok(Line::Text(s)) if s.trim().is_empty() => continue,
                Ok(Line::Text(s)) => return Ok(s),
                Ok(Line::Eof) | Err(RecvTimeoutError::Disconnected) => return Err(BridgeError::BrokenPipe),
                Err(RecvTimeoutError::Timeout) => return Err(BridgeError::Timeout(self.timeout)),
            }
        }
    }

    /// Sends one request and waits for its answer.
    pub fn request(&mut self, todo_tokens: &[String], diff_tokens: &[String]) -> Result<Verdict, BridgeError> {
        let id = self.next_id;
        self.next_id += 1;
        let mut line = serde_json::to_string(&Request {
            id,
            todo_tokens,
            diff_tokens,
        })
        .expect("request serializes");
        line.push('\n');
        let stdin = self.stdin.as_mut().ok_or(BridgeError::BrokenPipe)?;
        stdin
            .write_all(line.as_bytes())
            .and_then(|_| stdin.flush())
            .map_err(|_| BridgeError::BrokenPipe)?;

        let reply = self.read_line()?;
        let resp: Response = serde_json::from_str(reply.trim()).map_err(|e| BridgeError::Malformed(format!("{e}: {}", reply.trim())))?;
        if resp.id != id {
            return Err(BridgeError::Malformed(format!("expected id {id}, got {}", resp.id)));
        }
        if let Some(msg) = resp.error {
            return Err(BridgeError::Remote(msg));
        }
        let (Some(fp), Some(qp)) = (resp.form_probs, resp.quality_probs) else {
            return Err(BridgeError::Malformed("response lacks form_probs or quality_probs".into()));
        };
        let fp = validate_pair("form", &fp)?;
        let qp = validate_pair("quality", &qp)?;
        Ok(Verdict::from_probs(fp, qp, VerdictSource::Bridge))
    }
}

impl Drop for BridgeHandle {
    fn drop(&mut self) {
        // closing stdin lets a well-behaved server exit on its own
        self.stdin.take();
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

pub fn classify_bridge(handle: &mut BridgeHandle, todo: &NormalizedTodo, diff: &NormalizedDiff) -> Result<Verdict, BridgeError> {
    handle.request(&todo.tokens, &diff.tokens)
}

impl Classifier for BridgeHandle {
    fn classify(&mut self, todo: &NormalizedTodo, diff: Option<&NormalizedDiff>) -> Result<Verdict, ClassifyError> {
        let empty = NormalizedDiff::default();
        let v = classify_bridge(self, todo, diff.unwrap_or(&empty))?;
        Ok(super::tag_subcategory(todo, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_validation() {
        assert_eq!(validate_pair("form", &[0.6, 0.4]).unwrap(), [0.6, 1.0 - 0.6]);
        assert!(validate_pair("form", &[0.6, 0.6]).is_err());
        assert!(validate_pair("form", &[1.2, -0.2]).is_err());
        assert!(validate_pair("form", &[0.5]).is_err());
        assert!(validate_pair("form", &[f64::NAN, 0.5]).is_err());
        let p = validate_pair("form", &[0.3, 0.7000001]).unwrap();
        assert!((p[0] + p[1] - 1.0).abs() < 1e-15);
    }
}
