#include "ramify/extension_enumerator.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "ramify/root_counter.hpp"

namespace ramify {

std::vector<std::pair<ResidueElem, ResidualTuple>> class_representatives(const LocalField& K, const RamPolygon& R,
                                                                        const InvariantOrbit& O) {
    std::vector<std::pair<ResidueElem, ResidualTuple>> out;
    const auto classes = partition_star(K, R, O, R.n());
    for (ResidueElem d0 : nth_power_class_reps(K.residue_field(), R.n()))
        for (const auto& cls : classes)
            if (!validate_residuals(K, R, cls.front(), d0)) out.emplace_back(d0, cls.front());
    return out;
}

namespace {

struct Job {
    const RamPolygon* R;
    const InvariantOrbit* O;
    ResidueElem delta0;
    ResidualTuple A;
};

struct JobResult {
    std::vector<ExtensionRecord> records;
    ClassSummary summary;
};

JobResult run_job(const LocalField& K, const Job& job, const EnumerationOptions& opt) {
    const RamPolygon& R = *job.R;
    const CoeffTemplate T = build_template(K, R, job.A, job.delta0);
    const Guarantee g = uniqueness_guarantee(K, R, job.A);
    const bool filter = !g.guaranteed && !opt.no_filter;
    JobResult out{{}, ClassSummary{R, job.O->canonical, job.A, job.delta0, template_count(T), g, filter, 0}};
    if (opt.count_only && !filter) {
        out.summary.count = out.summary.template_count;
        return out;
    }
    const std::uint64_t bound = aut_upper_bound(K, R, job.A);
    std::vector<DigitPoly> polys;
    TemplateStream stream(T);
    for (DigitPoly phi; stream.next(phi);) {
        if (opt.roundtrip) {
            ResidualTuple back;
            try {
                back = residuals_of_polynomial(K, phi, R);
            } catch (const std::domain_error& e) {
                throw OracleMismatch(std::string("template polynomial failed the round trip: ") + e.what());
            }
            if (!(back == job.A)) throw OracleMismatch("template polynomial has residuals " + tuple_to_string(K, back) +
                                                       " instead of " + tuple_to_string(K, job.A));
        }
        polys.push_back(std::move(phi));
    }
    std::vector<std::size_t> kept;
    std::vector<std::uint64_t> merged(polys.size(), 1), aut(polys.size(), 0);
    if (filter) {
        FilterResult f = filter_minimal(K, polys, 1);
        kept = f.kept;
        for (std::size_t i = 0; i < polys.size(); ++i)
            if (f.merged_to[i] != i) ++merged[f.merged_to[i]];
        aut = f.aut;
    } else {
        for (std::size_t i = 0; i < polys.size(); ++i) kept.push_back(i);
        if (opt.with_aut)
            for (std::size_t i = 0; i < polys.size(); ++i) aut[i] = aut_count(K, polys[i]);
    }
    out.summary.count = kept.size();
    if (opt.count_only) return out;
    for (std::size_t i : kept) {
        ExtensionRecord rec{polys[i], R, job.O->canonical, job.A, job.delta0, bound, std::nullopt, merged[i], filter};
        if (filter || opt.with_aut) rec.aut_count = aut[i];
        out.records.push_back(std::move(rec));
    }
    return out;
}

Enumeration run_jobs(const LocalField& K, const std::vector<Job>& jobs, const EnumerationOptions& opt) {
    std::vector<std::optional<JobResult>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex lock;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            try {
                results[i] = run_job(K, jobs[i], opt);
            } catch (...) {
                std::lock_guard<std::mutex> g(lock);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < opt.jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);

    Enumeration E;
    for (auto& r : results) {
        E.total += r->summary.count;
        E.classes.push_back(std::move(r->summary));
        for (auto& rec : r->records) E.records.push_back(std::move(rec));
    }
    return E;
}

}  // namespace

Enumeration all_extensions(const LocalField& K, const RamPolygon& R, const InvariantOrbit& O,
                           const EnumerationOptions& opt) {
    std::vector<Job> jobs;
    for (auto& [d0, A] : class_representatives(K, R, O)) jobs.push_back({&R, &O, d0, A});
    return run_jobs(K, jobs, opt);
}

Enumeration all_extensions_by_disc(const LocalField& K, long n, long J0, const EnumerationOptions& opt) {
    if (!in_ore_range(K, n, J0)) throw std::invalid_argument("J_0 outside the admissible range");
    const auto polygons = enumerate_polygons(K, n, J0);
    std::vector<std::vector<InvariantOrbit>> orbits;
    for (const auto& R : polygons) orbits.push_back(enumerate_orbits(K, R));
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < polygons.size(); ++k)
        for (const auto& O : orbits[k])
            for (auto& [d0, A] : class_representatives(K, polygons[k], O)) jobs.push_back({&polygons[k], &O, d0, A});
    return run_jobs(K, jobs, opt);
}

std::vector<SummaryRow> summarize(const LocalField& K, const std::vector<ExtensionRecord>& records) {
    std::vector<SummaryRow> rows;
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
    for (const auto& rec : records) {
        auto key = std::make_tuple(rec.R.to_string(), tuple_to_string(K, rec.invariant),
                                   K.residue_field().to_string(rec.delta0));
        auto [it, fresh] = index.emplace(key, rows.size());
        if (fresh) rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), 0, false, {}, {}});
        SummaryRow& row = rows[it->second];
        ++row.count;
        row.filtered = row.filtered || rec.filtered;
        if (rec.aut_count) {
            row.aut_min = row.aut_min ? std::min(*row.aut_min, *rec.aut_count) : *rec.aut_count;
            row.aut_max = row.aut_max ? std::max(*row.aut_max, *rec.aut_count) : *rec.aut_count;
        }
    }
    return rows;
}

}  // namespace ramify
