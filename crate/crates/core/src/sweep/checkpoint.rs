//! Append-only JSON-lines checkpoint.
//!
//! The file holds one [`SweepRecord`] per line for a contiguous prefix of the
//! sweep range. A torn final line from an interrupted write is dropped on open
//! and the file is truncated back to the last complete record.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use super::{SweepError, SweepRecord};

#[derive(Debug)]
pub struct Checkpoint {
    path: PathBuf,
    file: File,
    loaded: Vec<SweepRecord>,
}

impl Checkpoint {
    /// Opens (or creates) the checkpoint for the range `[start, end]`.
    pub fn open(path: &Path, start: u128, end: u128) -> Result<Self, SweepError> {
        let io = |e| SweepError::io(path, e);
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(path)
            .map_err(io)?;

        let mut loaded = Vec::new();
        let mut good_len = 0u64;
        let mut reader = BufReader::new(&file);
        let mut line = String::new();
        let mut lineno = 0;
        loop {
            line.clear();
            let read = reader.read_line(&mut line).map_err(io)?;
            if read == 0 {
                break;
            }
            lineno += 1;
            if !line.ends_with('\n') {
                log::warn!("{}: dropping incomplete final line", path.display());
                break;
            }
            let record: SweepRecord = match serde_json::from_str(line.trim_end()) {
                Ok(r) => r,
                Err(e) => {
                    // Only the last line can be torn; anything earlier is corruption.
                    let mut rest = String::new();
                    if reader.read_line(&mut rest).map_err(io)? == 0 {
                        log::warn!("{}: dropping unparsable final line", path.display());
                        break;
                    }
                    return Err(SweepError::Checkpoint {
                        path: path.to_owned(),
                        line: lineno,
                        reason: e.to_string(),
                    });
                }
            };
            let expected = start + loaded.len() as u128;
            if record.n != expected || record.n > end {
                return Err(SweepError::Checkpoint {
                    path: path.to_owned(),
                    line: lineno,
                    reason: format!(
                        "record for n = {} does not continue the range [{start}, {end}] (expected n = {expected})",
                        record.n
                    ),
                });
            }
            loaded.push(record);
            good_len += read as u64;
        }
        drop(reader);
        if file.metadata().map_err(io)?.len() != good_len {
            file.set_len(good_len).map_err(io)?;
            file.sync_all().map_err(io)?;
        }
        file.seek(SeekFrom::End(0)).map_err(io)?;
        Ok(Checkpoint {
            path: path.to_owned(),
            file,
            loaded,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn loaded(&self) -> &[SweepRecord] {
        &self.loaded
    }

    pub fn take_loaded(&mut self) -> Vec<SweepRecord> {
        std::mem::take(&mut self.loaded)
    }

    /// Appends a batch and syncs it to disk.
    pub fn append(&mut self, records: &[SweepRecord]) -> Result<(), SweepError> {
        let mut buf = Vec::new();
        for r in records {
            serde_json::to_writer(&mut buf, r).map_err(|e| SweepError::Report(e.to_string()))?;
            buf.push(b'\n');
        }
        let io = |e| SweepError::io(&self.path, e);
        self.file.write_all(&buf).map_err(io)?;
        self.file.sync_data().map_err(io)
    }
}
