use std::sync::mpsc;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{anyhow, Result};
use rayon::prelude::*;

use crate::input::Input;

/// Runs `job` on every input on the global pool, keeping input order.
///
/// With a timeout each job runs on its own thread; a job that overruns is
/// reported as failed and left to finish in the background.
pub fn run<T, F>(inputs: &[Input], timeout: Option<f64>, job: F) -> Vec<Result<T>>
where
    T: Send + 'static,
    F: Fn(&Input) -> Result<T> + Send + Sync + 'static,
{
    let job = Arc::new(job);
    inputs
        .par_iter()
        .map(|input| {
            log::info!("processing {}", input.path.display());
            match timeout {
                None => job(input),
                Some(secs) => with_timeout(input.clone(), Arc::clone(&job), secs),
            }
        })
        .collect()
}

fn with_timeout<T, F>(input: Input, job: Arc<F>, secs: f64) -> Result<T>
where
    T: Send + 'static,
    F: Fn(&Input) -> Result<T> + Send + Sync + 'static,
{
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(job(&input));
    });
    match rx.recv_timeout(Duration::from_secs_f64(secs)) {
        Ok(result) => result,
        Err(mpsc::RecvTimeoutError::Timeout) => Err(anyhow!("Timeout: exceeded {secs}s")),
        Err(mpsc::RecvTimeoutError::Disconnected) => Err(anyhow!("worker panicked")),
    }
}
