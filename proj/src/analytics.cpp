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

#include "multifault/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <spdlog/spdlog.h>

namespace multifault {

LifespanRecord lifespan(const FaultId& n, const ExistenceRelation& relation,
                        const BenchmarkManifest& manifest) {
  const FaultRecord& self = manifest.fault(n);
  LifespanRecord rec{n, self.rank, 0, std::nullopt};
  const FaultRecord* oldest = nullptr;
  for (const auto& [pn, pm] : relation.pairs()) {
    if (pn != n) continue;
    const FaultRecord& m = manifest.fault(pm);
    if (!oldest || m.rank > oldest->rank) oldest = &m;
  }
  if (!oldest) return rec;
  rec.oldest_hit = oldest->id;
  rec.days = days_between(oldest->revision_date, self.revision_date);
  if (rec.days < 0) {
    spdlog::warn("lifespan of {}: {} is dated after it ({} days); clamping to 0", n.str(),
                 oldest->id.str(), -rec.days);
    rec.days = 0;
  }
  return rec;
}

LifespanSeries lifespan_series(const BenchmarkManifest& manifest,
                               const ExistenceRelation& relation) {
  LifespanSeries series;
  for (const auto* f : manifest.active()) series.records.push_back(lifespan(f->id, relation, manifest));
  std::stable_sort(series.records.begin(), series.records.end(),
                   [](const LifespanRecord& a, const LifespanRecord& b) {
                     if (a.days != b.days) return a.days > b.days;
                     return a.rank < b.rank;
                   });
  if (series.records.empty()) return series;
  const double n = static_cast<double>(series.records.size());
  double sum = 0;
  for (const auto& r : series.records) sum += static_cast<double>(r.days);
  series.mean = sum / n;
  double sq = 0;
  for (const auto& r : series.records) {
    const double d = static_cast<double>(r.days) - series.mean;
    sq += d * d;
  }
  series.stddev = std::sqrt(sq / n);
  return series;
}

HistogramReport histogram(const std::vector<MultiFaultSubject>& subjects) {
  HistogramReport report;
  int holder_rank = 0;
  for (const auto& s : subjects) {
    const std::size_t k = s.found.size();
    ++report.buckets[k];
    ++report.versions;
    if (k > 1) ++report.multi;
    if (k >= 10) ++report.ge10;
    if (k >= 20) ++report.ge20;
    if (k > report.max_count || (k == report.max_count && report.max_holder && s.rank > holder_rank)) {
      report.max_count = k;
      report.max_holder = s.base;
      holder_rank = s.rank;
    }
  }
  return report;
}

std::string format_histogram_table(const HistogramReport& report) {
  std::string out = "found_count,versions\n";
  for (const auto& [k, v] : report.buckets) out += std::to_string(k) + "," + std::to_string(v) + "\n";
  return out;
}

std::string format_histogram_summary(const HistogramReport& report) {
  const double pct = report.versions == 0
                         ? 0.0
                         : 100.0 * static_cast<double>(report.multi) / static_cast<double>(report.versions);
  char buf[256];
  std::snprintf(buf, sizeof buf, "versions=%zu, multi=%zu (%.1f%%), ge10=%zu, ge20=%zu, max=%zu, max_holder=%s\n",
                report.versions, report.multi, pct, report.ge10, report.ge20, report.max_count,
                report.max_holder ? report.max_holder->str().c_str() : "none");
  return std::string(buf) + "found counts include the base fault\n";
}

std::string format_lifespan_table(const LifespanSeries& series) {
  std::string out = "fault,days,oldest_hit\n";
  for (const auto& r : series.records)
    out += r.fault.str() + "," + std::to_string(r.days) + "," +
           (r.oldest_hit ? r.oldest_hit->str() : "") + "\n";
  return out;
}

std::string format_lifespan_summary(const LifespanSeries& series) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "faults=%zu, mean=%.0f, stddev=%.0f\nmean_exact=%.17g, stddev_exact=%.17g\n",
                series.records.size(), std::round(series.mean), std::round(series.stddev),
                series.mean, series.stddev);
  return std::string(buf) + "population standard deviation over all non-excluded faults\n";
}

namespace {

constexpr int kWidth = 640, kHeight = 400, kMargin = 48;

std::string svg_open(const char* title) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\">\n<title>%s</title>\n"
                "<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n"
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n"
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                kWidth, kHeight, kWidth, kHeight, title, kMargin, kHeight - kMargin,
                kWidth - kMargin, kHeight - kMargin, kMargin, kMargin, kMargin,
                kHeight - kMargin);
  return buf;
}

}  // namespace

std::string histogram_svg(const HistogramReport& report) {
  std::string out = svg_open("faulty versions per number of found faults");
  if (report.buckets.empty()) return out + "</svg>\n";
  const std::size_t max_k = report.buckets.rbegin()->first;
  std::size_t max_v = 0;
  for (const auto& [_, v] : report.buckets) max_v = std::max(max_v, v);
  const double plot_w = kWidth - 2.0 * kMargin, plot_h = kHeight - 2.0 * kMargin;
  const double bar_w = plot_w / static_cast<double>(max_k);
  char buf[256];
  for (const auto& [k, v] : report.buckets) {
    const double h = plot_h * static_cast<double>(v) / static_cast<double>(max_v);
    const double x = kMargin + bar_w * static_cast<double>(k - 1);
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"steelblue\"/>\n",
                  x + 1, kHeight - kMargin - h, std::max(bar_w - 2, 1.0), h);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%d\" font-size=\"10\" text-anchor=\"middle\">%zu</text>\n",
                  x + bar_w / 2, kHeight - kMargin + 14, k);
    out += buf;
  }
  return out + "</svg>\n";
}

std::string lifespan_svg(const LifespanSeries& series) {
  std::string out = svg_open("sorted fault lifespans in days");
  if (series.records.empty()) return out + "</svg>\n";
  long max_days = std::max<long>(1, series.records.front().days);
  const double plot_w = kWidth - 2.0 * kMargin, plot_h = kHeight - 2.0 * kMargin;
  const double step = plot_w / static_cast<double>(series.records.size());
  std::string path;
  char buf[128];
  for (std::size_t i = 0; i < series.records.size(); ++i) {
    const double y = kHeight - kMargin -
                     plot_h * static_cast<double>(series.records[i].days) / static_cast<double>(max_days);
    const double x0 = kMargin + step * static_cast<double>(i);
    if (i == 0) std::snprintf(buf, sizeof buf, "M%.2f %.2f H%.2f ", x0, y, x0 + step);
    else std::snprintf(buf, sizeof buf, "V%.2f H%.2f ", y, x0 + step);
    path += buf;
  }
  out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"firebrick\" stroke-width=\"1.5\"/>\n";
  return out + "</svg>\n";
}

}  // namespace multifault
