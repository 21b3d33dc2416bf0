#include "coopsem/emit.hpp"

#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace coopsem {

using nlohmann::ordered_json;

namespace {

ordered_json store_j(Store s, const StoreSpace& space) {
  // Keys sorted by name regardless of declaration order.
  std::map<std::string, int> sorted;
  for (std::size_t v = 0; v < space.num_vars(); ++v)
    sorted[space.config().vars[v]] = space.value(s, static_cast<int>(v));
  ordered_json j = ordered_json::object();
  for (const auto& [k, n] : sorted) j[k] = n;
  return j;
}

ordered_json seq_j(const TraceSeq& u, const StoreSpace& space) {
  ordered_json trs = ordered_json::array();
  for (const Transition& t : u) {
    ordered_json tj;
    tj["pre"] = store_j(t.pre(), space);
    tj["post"] = store_j(t.post(), space);
    tj["ret"] = t.ret();
    trs.push_back(std::move(tj));
  }
  ordered_json j;
  j["trs"] = std::move(trs);
  j["done"] = u.done();
  return j;
}

ordered_json set_j(const TraceSet& p, const StoreSpace& space) {
  ordered_json j = ordered_json::array();
  for (const TraceSeq& u : p) j.push_back(seq_j(u, space));
  return j;
}

ordered_json run_j(const Run& r, const StoreSpace& space) {
  ordered_json stores = ordered_json::array();
  for (Store s : r.stores) stores.push_back(store_j(s, space));
  ordered_json j;
  j["stores"] = std::move(stores);
  j["done"] = r.done;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(); }

}  // namespace

std::string emit_store(Store s, const StoreSpace& space, Format f) {
  return f == Format::Json ? dump(store_j(s, space)) : space.text(s);
}

std::string emit_seq(const TraceSeq& u, const StoreSpace& space, Format f) {
  return f == Format::Json ? dump(seq_j(u, space)) : to_text(u, space);
}

std::string emit_set(const TraceSet& p, const StoreSpace& space, Format f) {
  if (f == Format::Json) return dump(set_j(p, space));
  std::ostringstream out;
  for (const TraceSeq& u : p) out << to_text(u, space) << '\n';
  return out.str();
}

std::string emit_stats(const TraceSet& p, Format f) {
  std::map<std::size_t, std::size_t> by_len;
  std::size_t done = 0;
  for (const TraceSeq& u : p) {
    ++by_len[u.size()];
    if (u.done()) ++done;
  }
  if (f == Format::Json) {
    ordered_json j;
    j["kind"] = kind_name(p.kind());
    j["total"] = p.size();
    j["done"] = done;
    ordered_json lens = ordered_json::array();
    for (const auto& [len, n] : by_len) lens.push_back(ordered_json{{"length", len}, {"count", n}});
    j["by_length"] = std::move(lens);
    return dump(j);
  }
  std::ostringstream out;
  out << "kind " << kind_name(p.kind()) << "\ntotal " << p.size() << "\ndone " << done << '\n';
  for (const auto& [len, n] : by_len) out << "length " << len << ": " << n << '\n';
  return out.str();
}

std::string emit_runs(const std::vector<Run>& runs, const StoreSpace& space, Format f) {
  if (f == Format::Json) {
    ordered_json j = ordered_json::array();
    for (const Run& r : runs) j.push_back(run_j(r, space));
    return dump(j);
  }
  std::ostringstream out;
  for (const Run& r : runs) out << to_text(r, space) << '\n';
  return out.str();
}

std::string emit_verdict(const Verdict& v, const StoreSpace& space, Format f) {
  if (f == Format::Json) {
    ordered_json j;
    j["relation"] = relation_name(v.relation);
    j["bound"] = v.bound;
    j["left_only"] = v.left_witness ? seq_j(*v.left_witness, space) : ordered_json(nullptr);
    j["right_only"] = v.right_witness ? seq_j(*v.right_witness, space) : ordered_json(nullptr);
    return dump(j);
  }
  std::ostringstream out;
  out << relation_name(v.relation) << " (bound " << v.bound << ")\n";
  if (v.left_witness) out << "only left:  " << to_text(*v.left_witness, space) << '\n';
  if (v.right_witness) out << "only right: " << to_text(*v.right_witness, space) << '\n';
  return out.str();
}

std::string emit_law_reports(const std::vector<LawReport>& reports, const StoreSpace& space, Format f) {
  if (f == Format::Json) {
    ordered_json j = ordered_json::array();
    for (const LawReport& r : reports) {
      ordered_json e;
      e["law"] = r.name;
      e["samples"] = r.samples;
      e["exhaustive"] = r.exhaustive;
      e["sweep"] = r.sweep;
      e["verdict"] = verdict_name(r.verdict);
      if (r.counterexample) {
        const Counterexample& cx = *r.counterexample;
        ordered_json c;
        ordered_json ops = ordered_json::array();
        for (const TraceSet& s : cx.operands) ops.push_back(set_j(s, space));
        c["operands"] = std::move(ops);
        c["var"] = space.config().vars[cx.var];
        c["value"] = cx.value;
        c["witness"] = seq_j(cx.witness, space);
        c["side"] = cx.left_only ? "left" : "right";
        e["counterexample"] = std::move(c);
      } else {
        e["counterexample"] = nullptr;
      }
      j.push_back(std::move(e));
    }
    return dump(j);
  }
  std::size_t width = 4;
  for (const LawReport& r : reports) width = std::max(width, r.name.size());
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  out << pad("law", width) << "  " << pad("samples", 8) << "  " << pad("verdict", 24) << "  witness\n";
  for (const LawReport& r : reports) {
    out << pad(r.name, width) << "  " << pad(std::to_string(r.samples), 8) << "  " << pad(verdict_name(r.verdict), 24)
        << "  ";
    if (r.counterexample)
      out << to_text(r.counterexample->witness, space) << (r.counterexample->left_only ? " (left only)" : " (right only)");
    else
      out << "-";
    out << '\n';
  }
  return out.str();
}

std::string emit_adequacy(const AdequacyReport& r, Format f) {
  if (f == Format::Json) {
    ordered_json j;
    j["entries"] = r.entries;
    j["passed"] = r.passed;
    j["failed"] = r.failed;
    j["inconclusive"] = r.inconclusive;
    if (r.first_bad) {
      j["first_bad"] = ordered_json{{"index", *r.first_bad},
                                    {"status", status_name(r.first_bad_result.status)},
                                    {"detail", r.first_bad_result.mismatch}};
    } else {
      j["first_bad"] = nullptr;
    }
    return dump(j);
  }
  std::ostringstream out;
  out << "entries " << r.entries << ", passed " << r.passed << ", failed " << r.failed << ", inconclusive "
      << r.inconclusive << '\n';
  if (r.first_bad)
    out << "first " << status_name(r.first_bad_result.status) << " at #" << *r.first_bad << ": "
        << r.first_bad_result.mismatch << '\n';
  return out.str();
}

std::string emit_distinction(const std::optional<Distinction>& d, const StoreSpace& space, Format f) {
  if (f == Format::Json) {
    if (!d) return "null";
    ordered_json j;
    j["context"] = pretty(d->context);
    j["run"] = run_j(d->run, space);
    j["witness"] = seq_j(d->witness, space);
    j["bound"] = d->bound;
    return dump(j);
  }
  if (!d) return "none: the left denotation is included in the right\n";
  std::ostringstream out;
  out << "context: " << pretty(d->context) << '\n'
      << "run:     " << to_text(d->run, space) << '\n'
      << "witness: " << to_text(d->witness, space) << '\n';
  return out.str();
}

}  // namespace coopsem
