// Copyright 2026 The multifault Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "multifault/adapters.hpp"
#include "multifault/analytics.hpp"
#include "multifault/checkout.hpp"
#include "multifault/cli.hpp"
#include "multifault/core.hpp"
#include "multifault/errors.hpp"
#include "multifault/extractor.hpp"
#include "multifault/search.hpp"

namespace py = pybind11;
using namespace multifault;

namespace {

struct SearchResult {
  ExistenceRelation relation;
  std::string trace_csv;
  std::string summary_csv;
  std::size_t consultations = 0;
};

SearchResult run_search(const BenchmarkManifest& manifest, int jobs, bool oracle, bool keep_scratch,
                        const std::filesystem::path& scratch_root) {
  auto adapter = make_adapter(manifest);
  SearchOptions options;
  options.jobs = jobs;
  options.keep_scratch = keep_scratch;
  options.scratch_root = scratch_root;
  SearchTrace trace;
  try {
    trace = oracle ? brute_force_trace(manifest, *adapter, options) : search_all(manifest, *adapter, options);
  } catch (const SearchAborted& aborted) {
    std::rethrow_exception(aborted.cause());
  }
  return {trace.relation, format_trace(trace), format_run_summary(trace), trace.queries.size()};
}

std::vector<std::pair<FaultId, FaultId>> pair_list(const ExistenceRelation& r) {
  return {r.pairs().begin(), r.pairs().end()};
}

}  // namespace

PYBIND11_MODULE(_multifault, m) {
  m.doc() = "Bindings for the multifault library";

  // Translators run newest first, so specific types come last.
  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", error.ptr());
  auto env = py::register_exception<EnvironmentError>(m, "EnvironmentFailure", error.ptr());
  py::register_exception<ManifestError>(m, "ManifestError", domain.ptr());
  py::register_exception<LookupError>(m, "FaultLookupError", domain.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", domain.ptr());
  py::register_exception<BaselineError>(m, "BaselineError", domain.ptr());
  py::register_exception<ExtractError>(m, "ExtractError", domain.ptr());
  py::register_exception<Refusal>(m, "Refusal", domain.ptr());
  py::register_exception<TokenError>(m, "TokenError", domain.ptr());
  py::register_exception<CheckoutFailed>(m, "CheckoutFailed", env.ptr());

  py::class_<FaultId>(m, "FaultId")
      .def(py::init<std::string, int>(), py::arg("project"), py::arg("number"))
      .def_readonly("project", &FaultId::project)
      .def_readonly("number", &FaultId::number)
      .def("__str__", &FaultId::str)
      .def("__repr__", [](const FaultId& f) { return "FaultId('" + f.str() + "')"; })
      .def("__eq__", [](const FaultId& a, const FaultId& b) { return a == b; })
      .def("__lt__", [](const FaultId& a, const FaultId& b) { return a < b; })
      .def("__hash__", [](const FaultId& f) { return py::hash(py::make_tuple(f.project, f.number)); });

  py::class_<FaultRecord>(m, "FaultRecord")
      .def_readonly("id", &FaultRecord::id)
      .def_readonly("rank", &FaultRecord::rank)
      .def_readonly("excluded", &FaultRecord::excluded)
      .def_property_readonly("revision_date", [](const FaultRecord& r) { return format_iso_date(r.revision_date); })
      .def_property_readonly("faulty_ref", [](const FaultRecord& r) { return r.faulty_ref.locator; })
      .def_property_readonly("fixed_ref", [](const FaultRecord& r) { return r.fixed_ref.locator; })
      .def_property_readonly("tests", [](const FaultRecord& r) {
        std::vector<std::string> out;
        for (const auto& t : r.tests) out.push_back(t.token());
        return out;
      });

  py::class_<BenchmarkManifest>(m, "Manifest")
      .def_property_readonly("project", &BenchmarkManifest::project)
      .def_property_readonly("faults", &BenchmarkManifest::faults)
      .def("fault", &BenchmarkManifest::fault, py::arg("id"), py::return_value_policy::copy)
      .def("predecessors", [](const BenchmarkManifest& self, const FaultId& n) { return predecessors(n, self); });

  m.def("parse_manifest", &parse_manifest, py::arg("text"), py::arg("base_dir") = std::filesystem::path{});
  m.def("load_manifest", &load_manifest, py::arg("path"));

  py::class_<ExistenceRelation>(m, "Relation")
      .def(py::init<>())
      .def("insert", &ExistenceRelation::insert, py::arg("n"), py::arg("m"))
      .def("__contains__", [](const ExistenceRelation& r, const std::pair<FaultId, FaultId>& p) {
        return r.contains(p.first, p.second);
      })
      .def("__len__", &ExistenceRelation::size)
      .def("__eq__", [](const ExistenceRelation& a, const ExistenceRelation& b) { return a == b; })
      .def("pairs", &pair_list)
      .def("validate", &ExistenceRelation::validate, py::arg("manifest"))
      .def("to_csv", &format_relation);
  m.def("parse_relation", &parse_relation, py::arg("text"));

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("relation", &SearchResult::relation)
      .def_readonly("trace_csv", &SearchResult::trace_csv)
      .def_readonly("summary_csv", &SearchResult::summary_csv)
      .def_readonly("consultations", &SearchResult::consultations);
  m.def("search", &run_search, py::arg("manifest"), py::kw_only(), py::arg("jobs") = 1, py::arg("oracle") = false,
        py::arg("keep_scratch") = false, py::arg("scratch_root") = std::filesystem::path{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<MultiFaultSubject>(m, "Subject")
      .def_readonly("base", &MultiFaultSubject::base)
      .def_readonly("rank", &MultiFaultSubject::rank)
      .def_readonly("is_multi", &MultiFaultSubject::is_multi)
      .def_property_readonly("found", [](const MultiFaultSubject& s) {
        return std::vector<FaultId>(s.found.begin(), s.found.end());
      })
      .def_property_readonly("token", &MultiFaultSubject::token);
  m.def("build_subjects", &build_subjects, py::arg("relation"), py::arg("manifest"));
  m.def("format_subject_catalog", &format_subject_catalog, py::arg("subjects"));

  m.def(
      "histogram_summary",
      [](const ExistenceRelation& relation, const BenchmarkManifest& manifest) {
        auto report = histogram(build_subjects(relation, manifest));
        return format_histogram_table(report) + format_histogram_summary(report);
      },
      py::arg("relation"), py::arg("manifest"));
  m.def(
      "lifespan_summary",
      [](const ExistenceRelation& relation, const BenchmarkManifest& manifest) {
        auto series = lifespan_series(manifest, relation);
        return format_lifespan_table(series) + format_lifespan_summary(series);
      },
      py::arg("relation"), py::arg("manifest"));

  py::class_<MethodSpan>(m, "MethodSpan")
      .def_readonly("name", &MethodSpan::name)
      .def_readonly("start_line", &MethodSpan::start_line)
      .def_readonly("end_line", &MethodSpan::end_line)
      .def_readonly("text", &MethodSpan::text)
      .def_readonly("annotations", &MethodSpan::annotations);
  m.def("locate_method", &locate_method, py::arg("source"), py::arg("method_name"));
  m.def("list_methods", &list_methods, py::arg("source"));
  m.def(
      "extract_imports",
      [](std::string_view source) {
        std::vector<std::string> raw;
        for (const auto& d : extract_imports(source)) raw.push_back(d.raw);
        return raw;
      },
      py::arg("source"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
