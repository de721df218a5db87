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

// Fault lifespans and found-fault histograms.
//
// Conventions: found-fault counts include the base fault; the lifespan
// summary is taken over every non-excluded fault (zeros included) and uses
// the population standard deviation.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multifault/core.hpp"

namespace multifault {

struct LifespanRecord {
  FaultId fault;
  int rank = 0;
  long days = 0;
  std::optional<FaultId> oldest_hit;
};

// Days between the revision date of the oldest version revealing n and n's
// own revision date; 0 when nothing reveals it. Throws LookupError.
LifespanRecord lifespan(const FaultId& n, const ExistenceRelation& relation,
                        const BenchmarkManifest& manifest);

struct LifespanSeries {
  std::vector<LifespanRecord> records;  // days descending, then rank ascending
  double mean = 0.0;
  double stddev = 0.0;  // population
};

LifespanSeries lifespan_series(const BenchmarkManifest& manifest,
                               const ExistenceRelation& relation);

struct HistogramReport {
  std::map<std::size_t, std::size_t> buckets;  // found count -> versions
  std::size_t versions = 0;
  std::size_t multi = 0;
  std::size_t ge10 = 0;
  std::size_t ge20 = 0;
  std::size_t max_count = 0;
  std::optional<FaultId> max_holder;  // ties go to the highest rank
};

HistogramReport histogram(const std::vector<MultiFaultSubject>& subjects);

// "found_count,versions" rows.
std::string format_histogram_table(const HistogramReport& report);
// "versions=326, multi=311 (95.4%), ge10=126, ge20=22, max=24, max_holder=Closure-90"
std::string format_histogram_summary(const HistogramReport& report);
// "fault,days,oldest_hit" rows.
std::string format_lifespan_table(const LifespanSeries& series);
// Rounded display values plus full-precision values.
std::string format_lifespan_summary(const LifespanSeries& series);

std::string histogram_svg(const HistogramReport& report);
std::string lifespan_svg(const LifespanSeries& series);

}  // namespace multifault
