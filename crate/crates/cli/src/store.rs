use std::fs;
use std::path::{Path, PathBuf};
use syzlab_core::curvelab::TensorStore;
use syzlab_core::MultiplicationTensor;

/// Multiplication tensors cached as JSON files, one per key. The key contains the
/// curve's content hash, so a new prime or seed never reuses an old entry.
pub struct DiskStore {
    dir: PathBuf,
}

impl DiskStore {
    pub fn new(dir: impl AsRef<Path>) -> std::io::Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(DiskStore {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }
}

impl TensorStore for DiskStore {
    fn load(&self, key: &str) -> Option<MultiplicationTensor> {
        let bytes = fs::read(self.path(key)).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    fn save(&self, key: &str, tensor: &MultiplicationTensor) {
        let tmp = self.dir.join(format!("{key}.json.tmp"));
        if let Ok(bytes) = serde_json::to_vec(tensor) {
            if fs::write(&tmp, bytes).is_ok() {
                let _ = fs::rename(&tmp, self.path(key));
            }
        }
    }
}
