# Copyright 2026 The multifault Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Co-existing fault search over single-fault benchmarks."""

from ._multifault import (
    BaselineError,
    CheckoutFailed,
    ConsistencyError,
    DomainError,
    EnvironmentFailure,
    Error,
    ExtractError,
    FaultId,
    FaultLookupError,
    FaultRecord,
    Manifest,
    ManifestError,
    MethodSpan,
    Refusal,
    Relation,
    SearchResult,
    Subject,
    TokenError,
    build_subjects,
    extract_imports,
    format_subject_catalog,
    histogram_summary,
    lifespan_summary,
    list_methods,
    load_manifest,
    locate_method,
    parse_manifest,
    parse_relation,
    run_cli,
    search,
)

__all__ = [name for name in dir() if not name.startswith("_")]
