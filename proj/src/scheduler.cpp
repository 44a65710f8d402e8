#include <eqsat/scheduler.hpp>

#include <eqsat/ematch.hpp>
#include <eqsat/error.hpp>

#include <json.hpp>

namespace eqsat {

std::string to_json(const RunReport &report)
{
  nlohmann::ordered_json doc;
  doc["iterations_run"] = report.iterations_run;
  doc["saturated"] = report.saturated;
  auto iterations = nlohmann::ordered_json::array();
  for (const auto &it : report.per_iteration) {
    nlohmann::ordered_json entry;
    auto matches = nlohmann::ordered_json::array();
    for (const auto &[rule, count] : it.matches)
      matches.push_back({{"rule", rule}, {"count", count}});
    entry["matches"] = std::move(matches);
    entry["nodes_added"] = it.nodes_added;
    entry["merges"] = it.merges;
    entry["classes_after"] = it.classes_after;
    entry["nodes_after"] = it.nodes_after;
    iterations.push_back(std::move(entry));
  }
  doc["per_iteration"] = std::move(iterations);
  return doc.dump();
}

RunReport run(EGraph &egraph, std::span< const Rule > rules, std::size_t limit)
{
  if (limit == 0)
    throw Error(ErrorCode::InvalidArgument, "run limit must be at least 1");

  RunReport report;
  egraph.rebuild();

  for (std::size_t iter = 1; iter <= limit; ++iter) {
    try {
      const auto nodes_before = egraph.nodes_created();
      const auto merges_before = egraph.merges_performed();

      std::vector< std::vector< Substitution > > snapshot;
      snapshot.reserve(rules.size());
      for (const auto &rule : rules)
        snapshot.push_back(match_query(egraph, rule.query));

      IterationStats stats;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        apply_matches(egraph, rules[i], snapshot[i]);
        stats.matches.emplace_back(rules[i].name, snapshot[i].size());
      }
      egraph.rebuild();

      stats.nodes_added = static_cast< std::size_t >(egraph.nodes_created() - nodes_before);
      stats.merges = static_cast< std::size_t >(egraph.merges_performed() - merges_before);
      stats.classes_after = egraph.class_count();
      stats.nodes_after = egraph.node_count();

      report.iterations_run = iter;
      report.per_iteration.push_back(std::move(stats));
      if (!report.per_iteration.back().changed()) {
        report.saturated = true;
        break;
      }
    } catch (const Error &err) {
      egraph.rebuild();
      throw err.with_context("iteration " + std::to_string(iter));
    }
  }
  return report;
}

} // namespace eqsat
