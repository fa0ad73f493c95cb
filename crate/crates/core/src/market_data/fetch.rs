//! HTTP(S) retrieval of historical CSV bodies.

use std::time::Duration;

use thiserror::Error;

/// Fetch failures, each surfaced distinctly so callers can map them to
/// different diagnostics and exit codes.
#[derive(Debug, Error)]
pub enum FetchError {
    #[error("unsupported URL scheme in '{0}' (http and https only)")]
    UnsupportedScheme(String),
    #[error("request to {url} timed out after {timeout:?}")]
    Timeout { url: String, timeout: Duration },
    #[error("{url} returned HTTP status {status}")]
    Status { url: String, status: u16 },
    #[error("network error fetching {url}: {message}")]
    Network { url: String, message: String },
}

/// GET `url` and return the response body on status 200. The body is
/// returned verbatim, suitable for handing straight to `parse_csv`.
pub fn fetch_csv(url: &str, timeout: Duration) -> Result<String, FetchError> {
    if !url.starts_with("http://") && !url.starts_with("https://") {
        return Err(FetchError::UnsupportedScheme(url.to_string()));
    }

    let client = reqwest::blocking::Client::builder()
        .timeout(timeout)
        .build()
        .map_err(|e| FetchError::Network {
            url: url.to_string(),
            message: e.to_string(),
        })?;

    let map_err = |e: reqwest::Error| {
        if e.is_timeout() {
            FetchError::Timeout {
                url: url.to_string(),
                timeout,
            }
        } else {
            FetchError::Network {
                url: url.to_string(),
                message: e.to_string(),
            }
        }
    };

    let response = client.get(url).send().map_err(map_err)?;
    let status = response.status();
    if status.as_u16() != 200 {
        return Err(FetchError::Status {
            url: url.to_string(),
            status: status.as_u16(),
        });
    }
    response.text().map_err(map_err)
}
