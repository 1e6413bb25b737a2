#pragma once

// The no-quantum-symmetry certification pipeline. Elements of the 4-box
// intertwiner space are generated in a deterministic stream:
//   1. base diagrams from the catalog enumerator,
//   2. rotation / inverse-rotation closure of each accepted element,
//   3. pairwise products of accepted elements, breadth-first by element id,
// each inserted into an exact rational span; after every acceptance the flip
// is tested for membership. Success emits a self-contained certificate whose
// elements carry their derivations, so a verifier can recompute everything
// from the graph alone.
//
// The candidate stream is a pure function of the acceptance history, so a
// checkpoint is just the accept/reject bit string over consumed candidates
// plus the enumeration budgets: on resume, rejected candidates are skipped
// without recomputation and accepted ones are recomputed and re-inserted,
// reproducing the exact solver state.

#include "qsym/autgroup.hpp"
#include "qsym/boxalg.hpp"
#include "qsym/coeff.hpp"
#include "qsym/diagram.hpp"
#include "qsym/graph.hpp"
#include "qsym/graph6.hpp"
#include "qsym/linalg.hpp"
#include "qsym/orbits.hpp"

#include <json.hpp>

#include <chrono>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qsym {

struct CertifyOptions {
    int max_internal = 2;    // diagram catalog budget
    long max_edges = 8;      // diagram catalog budget
    long max_products = -1;  // product candidates; negative = unlimited
    long wall_clock_ms = -1; // per-slice budget; negative = unlimited
    bool run_to_saturation = false;
    int threads = 1;
    std::string cache_dir;   // empty: no caches, no checkpoints
    std::ostream* progress = nullptr;
    long progress_every = 50; // candidates between progress lines
    std::function<bool()> interrupted; // polled between candidates
};

enum class CertifyStatus { found, not_in_span_at_budget, budget_exceeded };

struct Certificate {
    int schema_version = 1;
    std::string graph6;
    std::string graph_hash;
    std::string provenance;
    long orbit_count = 0;
    std::vector<std::array<int, 4>> representatives;
    struct Element {
        long id;
        Derivation derivation;
    };
    std::vector<Element> elements;                     // derivation closure, ascending id
    std::vector<std::pair<long, Rational>> coefficients; // (element id, coefficient)
};

struct CertifyOutcome {
    CertifyStatus status = CertifyStatus::not_in_span_at_budget;
    std::optional<Certificate> certificate;
    long rank = 0;
    long omega4 = 0;
    long candidates = 0;
    long accepted = 0;
    long products_tried = 0;
    bool saturated = false;
    std::string checkpoint_path;
};

// ---------------------------------------------------------------------------
// Certificate JSON

inline nlohmann::ordered_json derivation_to_json(const Derivation& d) {
    nlohmann::ordered_json j;
    switch (d.type) {
        case Derivation::Type::base:
            j["type"] = "base";
            j["diagram"] = d.diagram;
            break;
        case Derivation::Type::product:
            j["type"] = "product";
            j["left"] = d.left;
            j["right"] = d.right;
            break;
        case Derivation::Type::rot:
            j["type"] = "rot";
            j["of"] = d.left;
            break;
        case Derivation::Type::invrot:
            j["type"] = "invrot";
            j["of"] = d.left;
            break;
        case Derivation::Type::flip:
            j["type"] = "flip";
            break;
        case Derivation::Type::literal:
            j["type"] = "literal";
            j["note"] = d.note;
            break;
    }
    return j;
}

inline Derivation derivation_from_json(const nlohmann::json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "base") return Derivation::base(j.at("diagram").get<std::string>());
    if (type == "product") return Derivation::product(j.at("left").get<long>(), j.at("right").get<long>());
    if (type == "rot") return Derivation::rot(j.at("of").get<long>());
    if (type == "invrot") return Derivation::invrot(j.at("of").get<long>());
    throw UnknownDerivation("certificate: unknown derivation type '" + type + "'");
}

inline nlohmann::ordered_json certificate_to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["schema_version"] = c.schema_version;
    j["kind"] = "qsym-certificate";
    j["target"] = "flip";
    j["graph"] = {{"graph6", c.graph6}, {"sha256", c.graph_hash}, {"provenance", c.provenance}};
    auto reps = nlohmann::ordered_json::array();
    for (const auto& r : c.representatives) reps.push_back({r[0], r[1], r[2], r[3]});
    j["orbits"] = {{"k", 4}, {"count", c.orbit_count}, {"representatives", reps}};
    auto elems = nlohmann::ordered_json::array();
    for (const auto& e : c.elements) {
        nlohmann::ordered_json ej = derivation_to_json(e.derivation);
        ej["id"] = e.id;
        elems.push_back(ej);
    }
    j["elements"] = elems;
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto& [id, q] : c.coefficients)
        coeffs.push_back({{"id", id}, {"value", rational_to_string(q)}});
    j["coefficients"] = coeffs;
    return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
    if (j.value("schema_version", 0) != 1 || j.value("kind", "") != std::string("qsym-certificate"))
        throw Error("certificate: wrong schema or kind");
    Certificate c;
    c.graph6 = j.at("graph").at("graph6").get<std::string>();
    c.graph_hash = j.at("graph").at("sha256").get<std::string>();
    c.provenance = j.at("graph").value("provenance", "");
    c.orbit_count = j.at("orbits").at("count").get<long>();
    for (const auto& r : j.at("orbits").at("representatives"))
        c.representatives.push_back({r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(), r.at(3).get<int>()});
    for (const auto& ej : j.at("elements"))
        c.elements.push_back({ej.at("id").get<long>(), derivation_from_json(ej)});
    for (const auto& cj : j.at("coefficients"))
        c.coefficients.emplace_back(cj.at("id").get<long>(), rational_from_string(cj.at("value").get<std::string>()));
    return c;
}

// ---------------------------------------------------------------------------
// Engine

namespace detail {

struct CertifyCandidate {
    enum class Kind { diagram, rot, invrot, product } kind;
    Diagram diagram; // base
    long a = -1, b = -1;
};

class CertifyEngine {
public:
    CertifyEngine(const Graph& g, CertifyOptions opt) : g_(g), opt_(std::move(opt)) {}

    CertifyOutcome run() {
        start_ = Clock::now();
        CertifyOutcome out;
        try {
            prepare();
        } catch (const ResourceBudgetExceeded& e) {
            out.status = CertifyStatus::budget_exceeded;
            out.omega4 = oi_.orbit_count();
            out.checkpoint_path = e.checkpoint_path;
            progress_line("budget stop during table build; partial rows checkpointed");
            return out;
        }
        out.omega4 = oi_.orbit_count();

        std::optional<std::string> stop = loop();
        out.rank = basis_.rank();
        out.candidates = consumed_;
        out.accepted = long(elements_.size());
        out.products_tried = products_tried_;
        out.saturated = basis_.rank() == oi_.orbit_count();
        if (stop.has_value()) {
            out.status = CertifyStatus::budget_exceeded;
            out.checkpoint_path = write_checkpoint();
            progress_line("budget stop: " + *stop + ", rank " + std::to_string(out.rank) + "/" +
                          std::to_string(out.omega4));
            return out;
        }
        auto coords = basis_.solve(flip_.values);
        if (coords.has_value()) {
            out.status = CertifyStatus::found;
            out.certificate = assemble(*coords);
            clear_checkpoint();
        } else {
            out.status = CertifyStatus::not_in_span_at_budget;
            // exhausted the budgeted stream: record the state anyway
            if (!opt_.cache_dir.empty()) out.checkpoint_path = write_checkpoint();
        }
        return out;
    }

private:
    using Clock = std::chrono::steady_clock;

    void prepare() {
        group_ = automorphism_group(g_);
        std::string hash12 = g_.sha256().substr(0, 12);
        if (!opt_.cache_dir.empty()) {
            std::filesystem::create_directories(opt_.cache_dir);
            std::string opath = opt_.cache_dir + "/orbits-" + hash12 + "-k4.json";
            try {
                oi_ = OrbitIndex::load(opath, g_);
            } catch (...) {
                oi_ = OrbitIndex::build(g_, group_, 4);
                oi_.save(opath);
            }
            std::string tpath = opt_.cache_dir + "/table-" + hash12 + ".bin";
            auto stage_stop = [this] {
                if (opt_.interrupted && opt_.interrupted()) return true;
                return opt_.wall_clock_ms >= 0 && elapsed_ms() > opt_.wall_clock_ms;
            };
            table_ = build_multiplicity_table_resumable(g_, oi_, tpath, opt_.threads, stage_stop);
            load_checkpoint();
        } else {
            oi_ = OrbitIndex::build(g_, group_, 4);
            table_ = build_multiplicity_table(g_, oi_, opt_.threads);
        }
        basis_ = SpanBasis(oi_.orbit_count());
        flip_ = flip_vector(g_, oi_);
        enumerator_.emplace(4, opt_.max_internal, opt_.max_edges);
    }

    /// nullopt: stream finished (or flip found / saturated). Otherwise the
    /// budget reason that interrupted the run.
    std::optional<std::string> loop() {
        while (true) {
            if (done_) return std::nullopt;
            bool live = consumed_ >= replay_limit_;
            if (live) {
                if (opt_.interrupted && opt_.interrupted()) return std::string("interrupt");
                if (opt_.wall_clock_ms >= 0 && elapsed_ms() > opt_.wall_clock_ms)
                    return std::string("wall clock");
                if (opt_.max_products >= 0 && products_tried_ > opt_.max_products)
                    return std::string("product budget");
            }
            auto cand = next_candidate();
            if (!cand.has_value()) return std::nullopt;
            process(*cand, live);
        }
    }

    std::optional<CertifyCandidate> next_candidate() {
        if (!rot_queue_.empty()) {
            CertifyCandidate c = rot_queue_.front();
            rot_queue_.pop_front();
            return c;
        }
        if (auto d = enumerator_->next()) {
            CertifyCandidate c;
            c.kind = CertifyCandidate::Kind::diagram;
            c.diagram = *d;
            return c;
        }
        // product phase: refill the pair queue lazily, element by element
        while (pair_queue_.empty() && pairs_enqueued_for_ < long(elements_.size())) {
            long t = pairs_enqueued_for_++;
            for (long i = 0; i <= t; ++i) pair_queue_.emplace_back(i, t);
            for (long i = 0; i < t; ++i) pair_queue_.emplace_back(t, i);
        }
        if (!pair_queue_.empty()) {
            auto [a, b] = pair_queue_.front();
            pair_queue_.pop_front();
            CertifyCandidate c;
            c.kind = CertifyCandidate::Kind::product;
            c.a = a;
            c.b = b;
            return c;
        }
        return std::nullopt;
    }

    void process(const CertifyCandidate& cand, bool live) {
        bool known = !live;
        bool known_accept = known && flags_[consumed_] == '1';
        if (cand.kind == CertifyCandidate::Kind::product) ++products_tried_;
        ++consumed_;
        if (known && !known_accept) return; // skip without computing

        CoefficientVector vec = compute(cand);
        auto outcome = basis_.insert(vec.values);
        if (!known) flags_.push_back(outcome.independent ? '1' : '0');
        if (known_accept && !outcome.independent)
            throw Error("certify: checkpoint replay diverged");
        if (!outcome.independent) return;

        long id = long(elements_.size());
        vec.derivation = derivation_of(cand);
        elements_.push_back(std::move(vec));

        // rotation closure of every accepted element
        CertifyCandidate r;
        r.kind = CertifyCandidate::Kind::rot;
        r.a = id;
        rot_queue_.push_back(r);
        r.kind = CertifyCandidate::Kind::invrot;
        rot_queue_.push_back(r);

        if ((lines_ + 1) % opt_.progress_every == 0 || basis_.rank() == oi_.orbit_count())
            progress_line("rank " + std::to_string(basis_.rank()) + "/" +
                          std::to_string(oi_.orbit_count()) + ", elements " +
                          std::to_string(elements_.size()) + ", candidates " +
                          std::to_string(consumed_));
        ++lines_;

        if (basis_.rank() == oi_.orbit_count()) {
            done_ = true; // saturated: nothing further can be independent
            return;
        }
        if (!opt_.run_to_saturation && basis_.contains(flip_.values)) done_ = true;
    }

    CoefficientVector compute(const CertifyCandidate& cand) {
        switch (cand.kind) {
            case CertifyCandidate::Kind::diagram:
                return coeff_vector(g_, oi_, cand.diagram, CountMode::homomorphism, opt_.threads);
            case CertifyCandidate::Kind::rot:
                return rot(elements_[cand.a], oi_);
            case CertifyCandidate::Kind::invrot:
                return invrot(elements_[cand.a], oi_);
            case CertifyCandidate::Kind::product:
                return box_product(elements_[cand.a], elements_[cand.b], table_);
        }
        throw Error("unreachable");
    }

    Derivation derivation_of(const CertifyCandidate& cand) {
        switch (cand.kind) {
            case CertifyCandidate::Kind::diagram:
                return Derivation::base(encode_diagram(cand.diagram));
            case CertifyCandidate::Kind::rot:
                return Derivation::rot(cand.a);
            case CertifyCandidate::Kind::invrot:
                return Derivation::invrot(cand.a);
            case CertifyCandidate::Kind::product:
                return Derivation::product(cand.a, cand.b);
        }
        throw Error("unreachable");
    }

    Certificate assemble(const std::vector<Rational>& coords) {
        Certificate cert;
        cert.graph6 = emit_graph6(g_);
        cert.graph_hash = g_.sha256();
        cert.provenance = g_.provenance();
        cert.orbit_count = oi_.orbit_count();
        for (long id = 0; id < oi_.orbit_count(); ++id) {
            auto r = oi_.representative(id);
            cert.representatives.push_back({r[0], r[1], r[2], r[3]});
        }
        // derivation closure over the support
        std::vector<char> needed(elements_.size(), 0);
        std::vector<long> stack;
        for (size_t i = 0; i < coords.size(); ++i)
            if (coords[i] != 0) stack.push_back(long(i));
        while (!stack.empty()) {
            long id = stack.back();
            stack.pop_back();
            if (needed[id]) continue;
            needed[id] = 1;
            const Derivation& d = elements_[id].derivation;
            if (d.type == Derivation::Type::product) {
                stack.push_back(d.left);
                stack.push_back(d.right);
            } else if (d.type == Derivation::Type::rot || d.type == Derivation::Type::invrot) {
                stack.push_back(d.left);
            }
        }
        for (size_t id = 0; id < elements_.size(); ++id)
            if (needed[id]) cert.elements.push_back({long(id), elements_[id].derivation});
        for (size_t i = 0; i < coords.size(); ++i)
            if (coords[i] != 0) cert.coefficients.emplace_back(long(i), coords[i]);
        return cert;
    }

    // ---- checkpointing ----------------------------------------------------

    std::string checkpoint_path() const {
        return opt_.cache_dir + "/certify-" + g_.sha256().substr(0, 12) + ".ckpt.json";
    }

    std::string write_checkpoint() {
        if (opt_.cache_dir.empty()) return {};
        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["kind"] = "qsym-certify-checkpoint";
        j["graph_sha256"] = g_.sha256();
        j["max_internal"] = opt_.max_internal;
        j["max_edges"] = opt_.max_edges;
        j["flags"] = flags_;
        j["elapsed_ms"] = elapsed_prior_ + elapsed_ms();
        std::string path = checkpoint_path();
        std::ofstream out(path);
        out << j.dump(2) << "\n";
        return path;
    }

    void load_checkpoint() {
        std::ifstream in(checkpoint_path());
        if (!in) return;
        nlohmann::json j;
        in >> j;
        if (j.value("graph_sha256", "") != g_.sha256()) return;
        if (j.value("kind", "") != std::string("qsym-certify-checkpoint")) return;
        if (j.value("max_internal", -1) != opt_.max_internal || j.value("max_edges", -1L) != opt_.max_edges)
            throw Error("certify: checkpoint was made with different enumeration budgets");
        flags_ = j.value("flags", std::string());
        replay_limit_ = long(flags_.size());
        elapsed_prior_ = j.value("elapsed_ms", 0L);
        progress_line("resuming from checkpoint: " + std::to_string(flags_.size()) + " candidates decided");
    }

    void clear_checkpoint() {
        if (opt_.cache_dir.empty()) return;
        std::error_code ec;
        std::filesystem::remove(checkpoint_path(), ec);
    }

    long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_).count();
    }

    void progress_line(const std::string& what) {
        if (opt_.progress) (*opt_.progress) << "certify: " << what << "\n" << std::flush;
    }

    const Graph& g_;
    CertifyOptions opt_;
    PermGroup group_{1, {}};
    OrbitIndex oi_;
    MultiplicityTable table_;
    SpanBasis basis_{0};
    CoefficientVector flip_;
    std::optional<DiagramEnumerator> enumerator_;
    std::vector<CoefficientVector> elements_;
    std::deque<CertifyCandidate> rot_queue_;
    std::deque<std::pair<long, long>> pair_queue_;
    long pairs_enqueued_for_ = 0;
    long consumed_ = 0;
    long products_tried_ = 0;
    long replay_limit_ = 0;
    long lines_ = 0;
    bool done_ = false;
    std::string flags_;
    long elapsed_prior_ = 0;
    Clock::time_point start_;
};

} // namespace detail

/// Pipeline: automorphism group, 4-box orbit index, multiplicity table, then
/// span growth over the deterministic element stream with a flip-membership
/// test after each insertion.
inline CertifyOutcome certify_no_quantum_symmetry(const Graph& g, const CertifyOptions& opt = {}) {
    detail::CertifyEngine engine(g, opt);
    return engine.run();
}

// ---------------------------------------------------------------------------
// Verification: recompute everything from the graph and the derivations with
// fresh counting, no reuse of solver state.

struct VerifyResult {
    bool valid = false;
    long witness_orbit = -1;
    std::string message;
};

inline VerifyResult verify_certificate(const Graph& g, const Certificate& cert, int threads = 1) {
    if (cert.graph_hash != g.sha256())
        throw HashMismatch("verify_certificate: certificate is for a different graph");
    Graph embedded = parse_graph6(cert.graph6);
    if (embedded.n() != g.n() || embedded.sha256() != g.sha256())
        return {false, -1, "embedded graph6 does not match the graph"};

    PermGroup group = automorphism_group(g);
    OrbitIndex oi = OrbitIndex::build(g, group, 4);
    if (oi.orbit_count() != cert.orbit_count) return {false, -1, "orbit count mismatch"};
    for (long id = 0; id < oi.orbit_count(); ++id) {
        auto r = oi.representative(id);
        const auto& cr = cert.representatives[id];
        if (!(r[0] == cr[0] && r[1] == cr[1] && r[2] == cr[2] && r[3] == cr[3]))
            return {false, id, "orbit representative mismatch"};
    }

    std::map<long, CoefficientVector> recomputed;
    std::optional<MultiplicityTable> table;
    for (const auto& e : cert.elements) {
        const Derivation& d = e.derivation;
        CoefficientVector v;
        switch (d.type) {
            case Derivation::Type::base:
                v = coeff_vector(g, oi, decode_diagram(d.diagram), CountMode::homomorphism, threads);
                break;
            case Derivation::Type::rot:
            case Derivation::Type::invrot: {
                auto it = recomputed.find(d.left);
                if (it == recomputed.end() || d.left >= e.id)
                    return {false, -1, "derivation references a later or missing element"};
                v = d.type == Derivation::Type::rot ? rot(it->second, oi) : invrot(it->second, oi);
                break;
            }
            case Derivation::Type::product: {
                auto il = recomputed.find(d.left);
                auto ir = recomputed.find(d.right);
                if (il == recomputed.end() || ir == recomputed.end() || d.left >= e.id || d.right >= e.id)
                    return {false, -1, "derivation references a later or missing element"};
                if (!table.has_value()) table = build_multiplicity_table(g, oi, threads);
                v = box_product(il->second, ir->second, *table);
                break;
            }
            default:
                throw UnknownDerivation("verify_certificate: unsupported derivation in certificate");
        }
        recomputed.emplace(e.id, std::move(v));
    }

    std::vector<Rational> sum(oi.orbit_count(), Rational(0));
    for (const auto& [id, coeff] : cert.coefficients) {
        auto it = recomputed.find(id);
        if (it == recomputed.end()) return {false, -1, "coefficient references a missing element"};
        for (long o = 0; o < oi.orbit_count(); ++o) sum[o] += coeff * it->second.values[o];
    }
    CoefficientVector flip = flip_vector(g, oi);
    for (long o = 0; o < oi.orbit_count(); ++o)
        if (sum[o] != flip.values[o]) return {false, o, "combination differs from the flip"};
    return {true, -1, "exact match on every orbit"};
}

struct SaturationReport {
    long rank = 0;
    long omega4 = 0;
    bool saturated = false; // rank == omega4 certifies P^X_{4,+} = P^{Aut}_{4,+}
};

inline SaturationReport saturation_report(const CertifyOutcome& out) {
    return {out.rank, out.omega4, out.rank == out.omega4};
}

} // namespace qsym
