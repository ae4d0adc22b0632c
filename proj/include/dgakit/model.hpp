#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dgakit/codec.hpp"
#include "dgakit/nn/layers.hpp"
#include "dgakit/nn/lstm.hpp"
#include "dgakit/nn/tensor.hpp"
#include "dgakit/rng.hpp"

namespace dgakit {

enum class ArchKind { ann, lstm, cnn, mit, bilbo };

inline const char* arch_name(ArchKind k) {
    switch (k) {
        case ArchKind::ann: return "ann";
        case ArchKind::lstm: return "lstm";
        case ArchKind::cnn: return "cnn";
        case ArchKind::mit: return "mit";
        case ArchKind::bilbo: return "bilbo";
    }
    return "?";
}

inline ArchKind arch_from(const std::string& name) {
    if (name == "ann") return ArchKind::ann;
    if (name == "lstm") return ArchKind::lstm;
    if (name == "cnn") return ArchKind::cnn;
    if (name == "mit") return ArchKind::mit;
    if (name == "bilbo") return ArchKind::bilbo;
    throw DataError("UnknownArchitecture", "unknown architecture '" + name + "'");
}

inline const std::array<ArchKind, 5>& all_architectures() {
    static const std::array<ArchKind, 5> kinds = {ArchKind::ann, ArchKind::lstm, ArchKind::cnn,
                                                  ArchKind::mit, ArchKind::bilbo};
    return kinds;
}

// Declarative description of one of the five model graphs. Sizes default to
// the reference configuration; validate() enforces the per-kind requirements.
struct ArchitectureSpec {
    ArchKind kind = ArchKind::bilbo;
    int embedding_dim = 128;
    int lstm_hidden = 256;
    std::vector<int> cnn_widths = {2, 3, 4, 5, 6};
    int cnn_filters = 60;
    int hidden_width = 100;
    double dropout_rate = 0.5;
    int mit_filters = 128;
    int mit_width = 3;
    int mit_pool = 2;
    int mit_lstm_hidden = 64;

    static ArchitectureSpec defaults(ArchKind k) {
        ArchitectureSpec s;
        s.kind = k;
        return s;
    }

    void validate() const {
        auto positive = [](int v, const char* what) {
            if (v <= 0) {
                throw DataError("InvalidSpec", std::string(what) + " must be positive");
            }
        };
        positive(embedding_dim, "embedding_dim");
        positive(hidden_width, "hidden_width");
        if (dropout_rate < 0.0 || dropout_rate >= 1.0) {
            throw DataError("InvalidSpec", "dropout_rate must be in [0,1)");
        }
        if (kind == ArchKind::lstm || kind == ArchKind::bilbo) {
            positive(lstm_hidden, "lstm_hidden");
        }
        if (kind == ArchKind::cnn || kind == ArchKind::bilbo) {
            positive(cnn_filters, "cnn_filters");
            if (cnn_widths.empty()) {
                throw DataError("InvalidSpec", "cnn_widths must be non-empty");
            }
            for (int w : cnn_widths) {
                if (w < 2 || w > static_cast<int>(kMaxDomainLength)) {
                    throw DataError("InvalidSpec", "conv width " + std::to_string(w) +
                                                       " outside [2,63]");
                }
            }
        }
        if (kind == ArchKind::mit) {
            positive(mit_filters, "mit_filters");
            positive(mit_lstm_hidden, "mit_lstm_hidden");
            positive(mit_pool, "mit_pool");
            if (mit_width < 2 || mit_width > static_cast<int>(kMaxDomainLength)) {
                throw DataError("InvalidSpec", "mit_width outside [2,63]");
            }
        }
    }

    nlohmann::json to_json() const {
        return nlohmann::json{{"kind", arch_name(kind)},
                              {"embedding_dim", embedding_dim},
                              {"lstm_hidden", lstm_hidden},
                              {"cnn_widths", cnn_widths},
                              {"cnn_filters", cnn_filters},
                              {"hidden_width", hidden_width},
                              {"dropout_rate", dropout_rate},
                              {"mit_filters", mit_filters},
                              {"mit_width", mit_width},
                              {"mit_pool", mit_pool},
                              {"mit_lstm_hidden", mit_lstm_hidden}};
    }

    static ArchitectureSpec from_json(const nlohmann::json& j) {
        ArchitectureSpec s;
        s.kind = arch_from(j.at("kind").get<std::string>());
        s.embedding_dim = j.at("embedding_dim").get<int>();
        s.lstm_hidden = j.at("lstm_hidden").get<int>();
        s.cnn_widths = j.at("cnn_widths").get<std::vector<int>>();
        s.cnn_filters = j.at("cnn_filters").get<int>();
        s.hidden_width = j.at("hidden_width").get<int>();
        s.dropout_rate = j.at("dropout_rate").get<double>();
        s.mit_filters = j.at("mit_filters").get<int>();
        s.mit_width = j.at("mit_width").get<int>();
        s.mit_pool = j.at("mit_pool").get<int>();
        s.mit_lstm_hidden = j.at("mit_lstm_hidden").get<int>();
        s.validate();
        return s;
    }
};

struct NamedTensor {
    std::string name;
    std::vector<std::size_t> dims;
    std::vector<float> values;
};

// Immutable snapshot of a model: spec, learned weights, version tag.
struct ModelParameters {
    ArchitectureSpec spec;
    std::vector<NamedTensor> tensors;
    std::string version;

    std::size_t parameter_count() const {
        std::size_t n = 0;
        for (const auto& t : tensors) n += t.values.size();
        return n;
    }
};

enum class Mode { train, infer };

// Inference always runs through fixed-size blocks so that a domain's score
// never depends on how it was batched: every GEMM a sample participates in
// has identical dimensions (padding rows use index 0 and are discarded).
inline constexpr std::size_t kInferBlock = 32;

namespace detail {

inline std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string utc_stamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

}  // namespace detail

// Version tag = content hash of the weights + wall-clock stamp of when the
// snapshot was taken. Stable across save/load because it is stored verbatim.
inline std::string parameters_version(const std::vector<NamedTensor>& tensors) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& t : tensors) {
        h = detail::fnv1a64(t.name.data(), t.name.size(), h);
        h = detail::fnv1a64(t.values.data(), t.values.size() * sizeof(float), h);
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return std::string(hex) + "-" + detail::utc_stamp();
}

// Executable model: owns mutable parameters and the per-forward caches, so
// one instance serves one thread. Share ModelParameters snapshots across
// threads and give each worker its own Model.
template <typename T>
class Model {
public:
    Model(const ArchitectureSpec& spec, std::uint64_t seed) : spec_(spec) {
        spec_.validate();
        Rng rng(seed);
        build(rng);
    }

    explicit Model(const ModelParameters& params) : spec_(params.spec), version_(params.version) {
        spec_.validate();
        Rng rng(0);
        build(rng);
        load_tensors(params.tensors);
    }

    const ArchitectureSpec& spec() const { return spec_; }
    const std::string& version() const { return version_; }

    std::vector<nn::Param<T>*> params() {
        std::vector<nn::Param<T>*> out;
        out.push_back(&emb_->table());
        auto add_dense = [&](nn::Dense<T>& d) {
            out.push_back(&d.weights());
            out.push_back(&d.bias());
        };
        auto add_lstm = [&](nn::Lstm<T>& l) {
            for (auto& p : l.gate_weights()) out.push_back(&p);
            for (auto& p : l.gate_biases()) out.push_back(&p);
        };
        auto add_convs = [&]() {
            for (auto& c : convs_) {
                out.push_back(&c->weights());
                out.push_back(&c->bias());
            }
        };
        switch (spec_.kind) {
            case ArchKind::ann:
                add_dense(*hidden_);
                break;
            case ArchKind::lstm:
                add_lstm(*lstm_);
                break;
            case ArchKind::cnn:
                add_convs();
                break;
            case ArchKind::mit:
                add_convs();
                add_lstm(*lstm_);
                break;
            case ArchKind::bilbo:
                add_lstm(*lstm_);
                add_convs();
                add_dense(*hidden_);
                break;
        }
        add_dense(*output_);
        return out;
    }

    std::size_t parameter_count() {
        std::size_t n = 0;
        for (auto* p : params()) n += p->value.size();
        return n;
    }

    // Scores in (0,1), one per input, order preserving.
    std::vector<T> forward(std::span<const EncodedDomain> batch, Mode mode, Rng* rng = nullptr) {
        if (batch.empty()) {
            throw DataError("EmptyBatch", "forward on empty batch");
        }
        if (mode == Mode::train) {
            if (rng == nullptr) {
                throw RuntimeError("MissingRng", "training forward requires an RNG");
            }
            std::vector<std::uint8_t> idx = flatten_indices(batch, batch.size());
            return run_block(idx, batch.size(), true, *rng);
        }
        std::vector<T> scores;
        scores.reserve(batch.size());
        Rng dummy(0);
        for (std::size_t off = 0; off < batch.size(); off += kInferBlock) {
            const std::size_t n = std::min(kInferBlock, batch.size() - off);
            std::vector<std::uint8_t> idx =
                flatten_indices(batch.subspan(off, n), kInferBlock);
            std::vector<T> block = run_block(idx, kInferBlock, false, dummy);
            scores.insert(scores.end(), block.begin(), block.begin() + n);
        }
        return scores;
    }

    // Gradient of the loss w.r.t. the scores of the latest training forward.
    void backward(const nn::Tensor<T>& dscores) {
        if (last_mode_ != Mode::train) {
            throw RuntimeError("NoForward", "backward without a training forward");
        }
        const std::size_t batch = last_batch_;
        nn::Tensor<T> dy = dscores.reshaped({batch, 1});
        switch (spec_.kind) {
            case ArchKind::ann: {
                nn::Tensor<T> dh = output_->backward(dy, hidden_out_);
                nn::Tensor<T> dflat = hidden_->backward(dh, emb_out_);
                emb_->backward(dflat);
                break;
            }
            case ArchKind::lstm: {
                nn::Tensor<T> dhd = output_->backward(dy, feat_out_);
                nn::Tensor<T> dh = drop_lstm_->backward(dhd);
                nn::Tensor<T> dx = lstm_->backward(dh);
                emb_->backward(dx);
                break;
            }
            case ArchKind::cnn: {
                nn::Tensor<T> dfd = output_->backward(dy, feat_out_);
                nn::Tensor<T> dfeats = drop_cnn_->backward(dfd);
                nn::Tensor<T> dx = conv_branches_backward(dfeats, 0);
                emb_->backward(dx);
                break;
            }
            case ArchKind::mit: {
                nn::Tensor<T> dh = output_->backward(dy, feat_out_);
                nn::Tensor<T> dp = lstm_->backward(dh);
                nn::Tensor<T> dc = mit_pool_->backward(dp);
                nn::Tensor<T> dx = convs_[0]->backward(dc, emb_out_);
                emb_->backward(dx);
                break;
            }
            case ArchKind::bilbo: {
                nn::Tensor<T> dbag = output_->backward(dy, hidden_out_);
                nn::Tensor<T> dcat = hidden_->backward(dbag, feat_out_);
                const std::size_t hn = static_cast<std::size_t>(spec_.lstm_hidden);
                const std::size_t cn = conv_feature_count();
                nn::Tensor<T> dhLd({batch, hn});
                nn::Tensor<T> dfeatsd({batch, cn});
                split_features(dcat, dhLd, dfeatsd);
                nn::Tensor<T> dhL = drop_lstm_->backward(dhLd);
                nn::Tensor<T> dx = lstm_->backward(dhL);
                nn::Tensor<T> dfeats = drop_cnn_->backward(dfeatsd);
                nn::Tensor<T> dxc = conv_branches_backward(dfeats, 0);
                dx.vec() += dxc.vec();
                emb_->backward(dx);
                break;
            }
        }
        last_mode_ = Mode::infer;
    }

    ModelParameters snapshot() {
        ModelParameters out;
        out.spec = spec_;
        for (auto* p : params()) {
            NamedTensor t;
            t.name = p->name;
            t.dims = p->value.shape();
            t.values.resize(p->value.size());
            for (std::size_t i = 0; i < t.values.size(); ++i) {
                t.values[i] = static_cast<float>(p->value[i]);
            }
            out.tensors.push_back(std::move(t));
        }
        out.version = parameters_version(out.tensors);
        version_ = out.version;
        return out;
    }

    void set_checked(bool on) { checked_ = on; }

    // Drops training caches; call between epochs to keep peak memory flat.
    void release_caches() {
        emb_out_ = nn::Tensor<T>();
        hidden_out_ = nn::Tensor<T>();
        feat_out_ = nn::Tensor<T>();
        if (lstm_) lstm_->release_caches();
    }

private:
    void build(Rng& rng) {
        const std::size_t edim = static_cast<std::size_t>(spec_.embedding_dim);
        emb_ = std::make_unique<nn::Embedding<T>>("embedding.table", kVocabularySize + 1, edim,
                                                  rng);
        switch (spec_.kind) {
            case ArchKind::ann: {
                hidden_ = std::make_unique<nn::Dense<T>>(
                    "hidden", kMaxDomainLength * edim,
                    static_cast<std::size_t>(spec_.hidden_width), nn::Activation::relu, rng);
                make_output(static_cast<std::size_t>(spec_.hidden_width), rng);
                break;
            }
            case ArchKind::lstm: {
                lstm_ = std::make_unique<nn::Lstm<T>>(
                    "lstm", edim, static_cast<std::size_t>(spec_.lstm_hidden), rng);
                drop_lstm_ = std::make_unique<nn::Dropout<T>>(spec_.dropout_rate);
                make_output(static_cast<std::size_t>(spec_.lstm_hidden), rng);
                break;
            }
            case ArchKind::cnn: {
                make_conv_branches(edim, rng);
                drop_cnn_ = std::make_unique<nn::Dropout<T>>(spec_.dropout_rate);
                make_output(conv_feature_count(), rng);
                break;
            }
            case ArchKind::mit: {
                convs_.push_back(std::make_unique<nn::Conv1d<T>>(
                    "conv" + std::to_string(spec_.mit_width),
                    static_cast<std::size_t>(spec_.mit_width), edim,
                    static_cast<std::size_t>(spec_.mit_filters), rng));
                mit_pool_ = std::make_unique<nn::TemporalMaxPool<T>>(
                    static_cast<std::size_t>(spec_.mit_pool));
                lstm_ = std::make_unique<nn::Lstm<T>>(
                    "lstm", static_cast<std::size_t>(spec_.mit_filters),
                    static_cast<std::size_t>(spec_.mit_lstm_hidden), rng);
                make_output(static_cast<std::size_t>(spec_.mit_lstm_hidden), rng);
                break;
            }
            case ArchKind::bilbo: {
                lstm_ = std::make_unique<nn::Lstm<T>>(
                    "lstm", edim, static_cast<std::size_t>(spec_.lstm_hidden), rng);
                drop_lstm_ = std::make_unique<nn::Dropout<T>>(spec_.dropout_rate);
                make_conv_branches(edim, rng);
                drop_cnn_ = std::make_unique<nn::Dropout<T>>(spec_.dropout_rate);
                hidden_ = std::make_unique<nn::Dense<T>>(
                    "bag", static_cast<std::size_t>(spec_.lstm_hidden) + conv_feature_count(),
                    static_cast<std::size_t>(spec_.hidden_width), nn::Activation::relu, rng);
                make_output(static_cast<std::size_t>(spec_.hidden_width), rng);
                break;
            }
        }
        pools_.resize(convs_.size());
    }

    void make_output(std::size_t in, Rng& rng) {
        output_ = std::make_unique<nn::Dense<T>>("output", in, 1, nn::Activation::sigmoid, rng);
    }

    void make_conv_branches(std::size_t edim, Rng& rng) {
        for (int w : spec_.cnn_widths) {
            convs_.push_back(std::make_unique<nn::Conv1d<T>>(
                "conv" + std::to_string(w), static_cast<std::size_t>(w), edim,
                static_cast<std::size_t>(spec_.cnn_filters), rng));
        }
    }

    std::size_t conv_feature_count() const {
        if (spec_.kind == ArchKind::mit) return static_cast<std::size_t>(spec_.mit_filters);
        return spec_.cnn_widths.size() * static_cast<std::size_t>(spec_.cnn_filters);
    }

    static std::vector<std::uint8_t> flatten_indices(std::span<const EncodedDomain> batch,
                                                     std::size_t rows) {
        std::vector<std::uint8_t> idx(rows * kMaxDomainLength, 0);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            std::copy(batch[i].indices.begin(), batch[i].indices.end(),
                      idx.begin() + static_cast<std::ptrdiff_t>(i * kMaxDomainLength));
        }
        return idx;
    }

    std::vector<T> run_block(const std::vector<std::uint8_t>& idx, std::size_t batch,
                             bool training, Rng& rng) {
        last_batch_ = batch;
        last_mode_ = training ? Mode::train : Mode::infer;
        emb_out_ = emb_->forward(idx.data(), batch, kMaxDomainLength);
        nn::Tensor<T> y;
        switch (spec_.kind) {
            case ArchKind::ann: {
                hidden_out_ = hidden_->forward(emb_out_);
                y = output_->forward(hidden_out_);
                break;
            }
            case ArchKind::lstm: {
                nn::Tensor<T> h = lstm_->forward(emb_out_);
                feat_out_ = drop_lstm_->forward(h, training, rng);
                y = output_->forward(feat_out_);
                break;
            }
            case ArchKind::cnn: {
                nn::Tensor<T> feats = conv_branches_forward(batch);
                feat_out_ = drop_cnn_->forward(feats, training, rng);
                y = output_->forward(feat_out_);
                break;
            }
            case ArchKind::mit: {
                nn::Tensor<T> c = convs_[0]->forward(emb_out_);
                nn::Tensor<T> p = mit_pool_->forward(c);
                feat_out_ = lstm_->forward(p);
                y = output_->forward(feat_out_);
                break;
            }
            case ArchKind::bilbo: {
                nn::Tensor<T> hL = lstm_->forward(emb_out_);
                nn::Tensor<T> hLd = drop_lstm_->forward(hL, training, rng);
                nn::Tensor<T> feats = conv_branches_forward(batch);
                nn::Tensor<T> featsd = drop_cnn_->forward(feats, training, rng);
                feat_out_ = concat_features(hLd, featsd);
                hidden_out_ = hidden_->forward(feat_out_);
                y = output_->forward(hidden_out_);
                break;
            }
        }
        if (checked_ && !y.all_finite()) {
            throw RuntimeError("NonFinite", "model produced a non-finite score");
        }
        std::vector<T> scores(batch);
        for (std::size_t i = 0; i < batch; ++i) scores[i] = y[i];
        return scores;
    }

    nn::Tensor<T> conv_branches_forward(std::size_t batch) {
        const std::size_t per = static_cast<std::size_t>(spec_.cnn_filters);
        nn::Tensor<T> feats({batch, convs_.size() * per});
        for (std::size_t k = 0; k < convs_.size(); ++k) {
            nn::Tensor<T> c = convs_[k]->forward(emb_out_);
            nn::Tensor<T> p = pools_[k].forward(c);
            for (std::size_t bi = 0; bi < batch; ++bi) {
                std::copy(p.data() + bi * per, p.data() + (bi + 1) * per,
                          feats.data() + bi * convs_.size() * per + k * per);
            }
        }
        return feats;
    }

    nn::Tensor<T> conv_branches_backward(const nn::Tensor<T>& dfeats, int) {
        const std::size_t batch = last_batch_;
        const std::size_t per = static_cast<std::size_t>(spec_.cnn_filters);
        nn::Tensor<T> dx(emb_out_.shape());
        for (std::size_t k = 0; k < convs_.size(); ++k) {
            nn::Tensor<T> dp({batch, per});
            for (std::size_t bi = 0; bi < batch; ++bi) {
                std::copy(dfeats.data() + bi * convs_.size() * per + k * per,
                          dfeats.data() + bi * convs_.size() * per + (k + 1) * per,
                          dp.data() + bi * per);
            }
            nn::Tensor<T> dc = pools_[k].backward(dp);
            nn::Tensor<T> dxk = convs_[k]->backward(dc, emb_out_);
            dx.vec() += dxk.vec();
        }
        return dx;
    }

    nn::Tensor<T> concat_features(const nn::Tensor<T>& a, const nn::Tensor<T>& b) {
        const std::size_t batch = a.dim(0), fa = a.dim(1), fb = b.dim(1);
        nn::Tensor<T> out({batch, fa + fb});
        for (std::size_t bi = 0; bi < batch; ++bi) {
            std::copy(a.data() + bi * fa, a.data() + (bi + 1) * fa,
                      out.data() + bi * (fa + fb));
            std::copy(b.data() + bi * fb, b.data() + (bi + 1) * fb,
                      out.data() + bi * (fa + fb) + fa);
        }
        return out;
    }

    void split_features(const nn::Tensor<T>& cat, nn::Tensor<T>& a, nn::Tensor<T>& b) {
        const std::size_t batch = a.dim(0), fa = a.dim(1), fb = b.dim(1);
        for (std::size_t bi = 0; bi < batch; ++bi) {
            std::copy(cat.data() + bi * (fa + fb), cat.data() + bi * (fa + fb) + fa,
                      a.data() + bi * fa);
            std::copy(cat.data() + bi * (fa + fb) + fa, cat.data() + (bi + 1) * (fa + fb),
                      b.data() + bi * fb);
        }
    }

    void load_tensors(const std::vector<NamedTensor>& tensors) {
        auto mine = params();
        if (tensors.size() != mine.size()) {
            throw DataError("BadModelFile",
                            "tensor count mismatch: file has " + std::to_string(tensors.size()) +
                                ", architecture needs " + std::to_string(mine.size()));
        }
        for (std::size_t i = 0; i < tensors.size(); ++i) {
            if (tensors[i].name != mine[i]->name || tensors[i].dims != mine[i]->value.shape()) {
                throw DataError("BadModelFile", "tensor '" + tensors[i].name +
                                                    "' does not match expected '" +
                                                    mine[i]->name + "'");
            }
            for (std::size_t j = 0; j < tensors[i].values.size(); ++j) {
                mine[i]->value[j] = static_cast<T>(tensors[i].values[j]);
            }
        }
    }

    ArchitectureSpec spec_;
    std::string version_;
    bool checked_ = false;

    std::unique_ptr<nn::Embedding<T>> emb_;
    std::unique_ptr<nn::Lstm<T>> lstm_;
    std::vector<std::unique_ptr<nn::Conv1d<T>>> convs_;
    std::vector<nn::GlobalMaxPool<T>> pools_;
    std::unique_ptr<nn::TemporalMaxPool<T>> mit_pool_;
    std::unique_ptr<nn::Dropout<T>> drop_lstm_, drop_cnn_;
    std::unique_ptr<nn::Dense<T>> hidden_, output_;

    nn::Tensor<T> emb_out_, hidden_out_, feat_out_;
    std::size_t last_batch_ = 0;
    Mode last_mode_ = Mode::infer;
};

// Seeded random initialization of one architecture, as an immutable snapshot.
inline ModelParameters build_model(const ArchitectureSpec& spec, std::uint64_t seed) {
    Model<float> m(spec, seed);
    return m.snapshot();
}

inline ModelParameters build_ann(const ArchitectureSpec& s, std::uint64_t seed = 1) {
    if (s.kind != ArchKind::ann) throw DataError("InvalidSpec", "spec kind must be ann");
    return build_model(s, seed);
}
inline ModelParameters build_lstm(const ArchitectureSpec& s, std::uint64_t seed = 1) {
    if (s.kind != ArchKind::lstm) throw DataError("InvalidSpec", "spec kind must be lstm");
    return build_model(s, seed);
}
inline ModelParameters build_cnn(const ArchitectureSpec& s, std::uint64_t seed = 1) {
    if (s.kind != ArchKind::cnn) throw DataError("InvalidSpec", "spec kind must be cnn");
    return build_model(s, seed);
}
inline ModelParameters build_mit(const ArchitectureSpec& s, std::uint64_t seed = 1) {
    if (s.kind != ArchKind::mit) throw DataError("InvalidSpec", "spec kind must be mit");
    return build_model(s, seed);
}
inline ModelParameters build_bilbo(const ArchitectureSpec& s, std::uint64_t seed = 1) {
    if (s.kind != ArchKind::bilbo) throw DataError("InvalidSpec", "spec kind must be bilbo");
    return build_model(s, seed);
}

}  // namespace dgakit
