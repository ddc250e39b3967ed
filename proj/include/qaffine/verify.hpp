#pragma once

#include <atomic>
#include <chrono>
#include <thread>

#include <json.hpp>

#include "qaffine/algebra.hpp"

namespace qaffine {

struct Inconsistent : std::runtime_error {
    explicit Inconsistent(const std::string& w) : std::runtime_error(w) {}
};
struct Underdetermined : std::runtime_error {
    Underdetermined() : std::runtime_error("no test vector determines the constant") {}
};

struct CampaignSpec {
    Family family = Family::osp1_2n_1;
    int n = 1;
    RepVariant variant = RepVariant::vacuum_wp;
    long energy = 3;
    int ball = 2;
    long modes = 2;
    std::string filter;        // relation-id prefix, empty = all
    int workers = 1;
    bool chevalley = false;    // add the Definition-2.1 index-0 endpoint
    bool dual = false;         // run the correspondence pullback instead
    Mutation mutation = Mutation::none;
};

struct InstanceOutcome {
    RelationInstance inst;
    std::string outcome;       // "pass" | "fail" | "skipped"
    std::string witness;       // failing basis state
    std::string difference;    // lhs - rhs on the witness
    std::string reason;        // skip reason
};

struct Report {
    CampaignSpec spec;
    std::vector<InstanceOutcome> outcomes;
    std::map<std::string, std::string> constants;
    long basis_size = 0;
    double seconds = 0.0;

    bool all_pass() const {
        for (const auto& o : outcomes)
            if (o.outcome == "fail") return false;
        return true;
    }
    long failures() const {
        long f = 0;
        for (const auto& o : outcomes) f += o.outcome == "fail";
        return f;
    }
};

/// Evaluate one relation instance on the given vectors; pass iff lhs - rhs
/// vanishes identically, otherwise the first witness is recorded.
inline InstanceOutcome check_instance(const RepImages& im, const RelationInstance& inst,
                                      const std::vector<BasisState>& vectors) {
    InstanceOutcome out;
    out.inst = inst;
    for (const auto& b : vectors) {
        FockVector diff = eval_expr(im, inst.lhs, b);
        add_scaled(diff, eval_expr(im, inst.rhs, b), FieldElem(-1));
        if (!diff.empty()) {
            out.outcome = "fail";
            out.witness = b.str();
            out.difference = render(diff);
            return out;
        }
    }
    out.outcome = "pass";
    return out;
}

/// Solve eq. (2.1) for c_g: c_g [e_0, f_0^unit] v = (k_0 - k_0^{-1})/(q_0 - q_0^{-1}) v
/// on every vector with a nonzero left side; all such vectors must agree.
inline FieldElem determine_cg(const RootDatum& rd, const RepImages& im,
                              const ChevImages& ch,
                              const std::vector<BasisState>& vectors,
                              int* support_count = nullptr) {
    GenExpr comm = supercomm(rd, ch.e0, ch.f0_unit);
    FieldElem q0 = FieldElem::s_pow(rd.gram[0][0]);
    GenExpr rhs = (ch.k0 - ch.k0_inv).scaled((q0 - q0.inverse()).inverse());
    std::optional<FieldElem> cg;
    int support = 0;
    for (const auto& b : vectors) {
        FockVector lv = eval_expr(im, comm, b);
        FockVector rv = eval_expr(im, rhs, b);
        if (lv.empty()) {
            if (!rv.empty()) throw Inconsistent("zero bracket against nonzero Cartan side");
            continue;
        }
        ++support;
        // rv must be proportional to lv with one common ratio
        FieldElem ratio = FieldElem::zero();
        bool first = true;
        for (const auto& [st, c] : lv) {
            auto it = rv.find(st);
            FieldElem rc = it == rv.end() ? FieldElem::zero() : it->second;
            FieldElem r = rc / c;
            if (first) {
                ratio = r;
                first = false;
            } else if (!(ratio == r)) {
                throw Inconsistent("bracket not proportional to the Cartan side on " +
                                   b.str());
            }
        }
        if ((long)rv.size() > (long)lv.size())
            throw Inconsistent("Cartan side has extra support on " + b.str());
        if (cg && !(*cg == ratio))
            throw Inconsistent("different vectors demand different c_g");
        cg = ratio;
    }
    if (!cg) throw Underdetermined();
    if (support_count) *support_count = support;
    return *cg;
}

/// Definition-2.1 relation instances involving the affine node, with the
/// supplied c_g substituted.
inline std::vector<RelationInstance> chevalley_catalog(const RootDatum& rd,
                                                       const ChevImages& ch,
                                                       const FieldElem& cg) {
    std::vector<RelationInstance> out;
    int n = rd.n;
    GenExpr f0 = ch.f0_unit.scaled(cg);
    FieldElem q0 = FieldElem::s_pow(rd.gram[0][0]);
    auto ei = [&](int j) {
        return j == 0 ? ch.e0 : GenExpr::sym(detail::xi_sym(+1, j, 0));
    };
    auto fi = [&](int j) {
        return j == 0 ? f0 : GenExpr::sym(detail::xi_sym(-1, j, 0));
    };
    auto ki = [&](int j, int e) {
        if (j == 0) return e > 0 ? ch.k0 : ch.k0_inv;
        return GenExpr::sym({SymKind::GammaI, j, e});
    };
    auto qi = [&](int j) { return FieldElem::s_pow(rd.gram[j][j]); };

    // k_0 e_j k_0^{-1} = q_0^{a_0j} e_j and mirror relations
    for (int j = 0; j <= n; ++j) {
        RelationInstance a;
        a.id = "chev-1";
        a.i = 0;
        a.j = j;
        a.lhs = ch.k0 * ei(j) * ch.k0_inv;
        a.rhs = ei(j).scaled(q0.pow(rd.a(0, j)));
        out.push_back(std::move(a));
        RelationInstance b;
        b.id = "chev-1";
        b.i = 0;
        b.j = j;
        b.modes = {-1};
        b.lhs = ch.k0 * fi(j) * ch.k0_inv;
        b.rhs = fi(j).scaled(q0.pow(-rd.a(0, j)));
        out.push_back(std::move(b));
        if (j >= 1) {
            RelationInstance c;
            c.id = "chev-1";
            c.i = j;
            c.j = 0;
            c.lhs = ki(j, +1) * ch.e0 * ki(j, -1);
            c.rhs = ch.e0.scaled(qi(j).pow(rd.a(j, 0)));
            out.push_back(std::move(c));
            RelationInstance d;
            d.id = "chev-1";
            d.i = j;
            d.j = 0;
            d.modes = {-1};
            d.lhs = ki(j, +1) * f0 * ki(j, -1);
            d.rhs = f0.scaled(qi(j).pow(-rd.a(j, 0)));
            out.push_back(std::move(d));
        }
    }
    // [e_i, f_j} = delta_ij (k_i - k_i^{-1})/(q_i - q_i^{-1}), 0 involved
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i != 0 && j != 0) continue;
            RelationInstance ri;
            ri.id = "chev-2";
            ri.i = i;
            ri.j = j;
            ri.lhs = supercomm(rd, ei(i), fi(j));
            if (i == j)
                ri.rhs = (ki(i, +1) - ki(i, -1))
                             .scaled((qi(i) - qi(i).inverse()).inverse());
            out.push_back(std::move(ri));
        }
    // Serre relations (Ad_{e_i})^{1-a_ij}(e_j) = 0 with 0 in {i,j}
    auto ad_e = [&](int i, const GenExpr& x) {
        int sign = (rd.odd[i] && expr_parity(rd, x)) ? 1 : -1;
        return ei(i) * x + (ki(i, +1) * x * ki(i, -1) * ei(i)).scaled(FieldElem(sign));
    };
    auto ad_f = [&](int i, const GenExpr& x) {
        int sign = (rd.odd[i] && expr_parity(rd, x)) ? 1 : -1;
        return fi(i) * x + (ki(i, -1) * x * ki(i, +1) * fi(i)).scaled(FieldElem(sign));
    };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i == j || (i != 0 && j != 0)) continue;
            if (rd.a(i, j) == 0 && rd.a(j, i) == 0 && i != 0 && j != 0) continue;
            long l = 1 - rd.a(i, j);
            RelationInstance se;
            se.id = "chev-3";
            se.i = i;
            se.j = j;
            GenExpr acc = ei(j);
            for (long k = 0; k < l; ++k) acc = ad_e(i, acc);
            se.lhs = acc;
            out.push_back(std::move(se));
            RelationInstance sf;
            sf.id = "chev-4";
            sf.i = i;
            sf.j = j;
            GenExpr accf = fi(j);
            for (long k = 0; k < l; ++k) accf = ad_f(i, accf);
            sf.lhs = accf;
            out.push_back(std::move(sf));
        }
    return out;
}

/// Run a full campaign: enumerate the basis, build the representation and
/// catalog, check every instance. Deterministic given the spec.
inline Report run_campaign(const CampaignSpec& spec) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep_out;
    rep_out.spec = spec;

    Rep rep = spec.dual && spec.family == Family::osp2_2n_2
                  ? assign_vacuum_sec3(spec.family, spec.n)
                  : assign_rep(spec.family, spec.n, spec.variant, spec.mutation);

    std::vector<RelationInstance> instances;
    RepImages im;
    if (spec.dual) {
        Rep rescaled = rep.rescaled(true);
        RootDatum dual_rd = build_datum(dual_of(spec.family), spec.n, Norm::sec3);
        im = correspondence_pullback(rescaled, dual_rd);
        // all scalars are baked into the instances at build time; the images
        // never dereference the dual datum afterwards
        instances = dual_catalog(dual_rd, spec.modes,
                                 spec.mutation == Mutation::wrong_theta);
        im.rd = nullptr;
        rep_out.constants["t^{1/2}"] = dual_rd.t_half.str();
    } else {
        im = images_of(rep);
        instances = catalog(rep.datum(), spec.modes, false,
                            spec.mutation == Mutation::wrong_theta);
    }

    std::vector<BasisState> vectors = enumerate_basis(rep.space(), 2 * spec.energy,
                                                      spec.ball);
    rep_out.basis_size = (long)vectors.size();

    if (spec.chevalley && !spec.dual) {
        ChevImages ch = chevalley_images(rep.datum());
        int support = 0;
        FieldElem cg = determine_cg(rep.datum(), im, ch, vectors, &support);
        rep_out.constants["c_g"] = cg.str();
        rep_out.constants["c_g_support"] = std::to_string(support);
        auto chev = chevalley_catalog(rep.datum(), ch, cg);
        instances.insert(instances.end(), chev.begin(), chev.end());
        std::string w;
        for (int x : ch.ad_word) w += (w.empty() ? "" : ",") + std::to_string(x);
        rep_out.constants["e0_ad_word"] = w;
    }
    if (!spec.dual) {
        rep_out.constants["offset2+[n]"] = std::to_string(rep.off2(+1, spec.n));
        rep_out.constants["offset2-[n]"] = std::to_string(rep.off2(-1, spec.n));
    }

    if (!spec.filter.empty()) {
        std::erase_if(instances, [&](const RelationInstance& ri) {
            return ri.id.rfind(spec.filter, 0) != 0;
        });
    }

    rep_out.outcomes.resize(instances.size());
    int workers = std::max(1, spec.workers);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= instances.size()) return;
            rep_out.outcomes[k] = check_instance(im, instances[k], vectors);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    rep_out.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep_out;
}

// ---------------------------------------------------------------------------
// JSON report schema

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json j;
    j["family"] = family_name(r.spec.family);
    j["rank"] = r.spec.n;
    j["variant"] = variant_name(r.spec.variant);
    j["dual"] = r.spec.dual;
    j["energy"] = r.spec.energy;
    j["ball"] = r.spec.ball;
    j["modes"] = r.spec.modes;
    j["basis_size"] = r.basis_size;
    j["seconds"] = r.seconds;
    j["constants"] = r.constants;
    j["failures"] = r.failures();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& o : r.outcomes) {
        nlohmann::json e;
        e["id"] = o.inst.id;
        e["family"] = family_name(r.spec.dual ? dual_of(r.spec.family) : r.spec.family);
        e["indices"] = {o.inst.i, o.inst.j};
        e["modes"] = o.inst.modes;
        e["outcome"] = o.outcome;
        if (o.outcome == "fail") {
            e["witness"] = o.witness;
            e["difference"] = o.difference;
        }
        if (o.outcome == "skipped") e["reason"] = o.reason;
        arr.push_back(std::move(e));
    }
    j["instances"] = std::move(arr);
    return j;
}

}  // namespace qaffine
