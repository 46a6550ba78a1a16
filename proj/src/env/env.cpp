#include "gridforge/env/env.hpp"

#include "gridforge/gdy/parser.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace gridforge::env {

gdy::LevelLayout resolve_level(const gdy::GdyDocument& document,
                               const std::variant<int, std::string, levelgen::GenParams>& level)
{
    if (const int* index = std::get_if<int>(&level)) {
        const auto& levels = document.environment.levels;
        if (levels.empty()) {
            throw Error(ErrorCode::no_levels, "document declares no levels; pass a level string or generator");
        }
        if (*index < 0 || static_cast<std::size_t>(*index) >= levels.size()) {
            throw Error(ErrorCode::level_unavailable,
                        "level " + std::to_string(*index) + " does not exist (document has " +
                            std::to_string(levels.size()) + ")");
        }
        return gdy::parse_level(document, levels[static_cast<std::size_t>(*index)]);
    }
    if (const auto* text = std::get_if<std::string>(&level)) {
        return gdy::parse_level(document, *text);
    }
    return gdy::parse_level(document, levelgen::generate(std::get<levelgen::GenParams>(level)));
}

gdy::VariableMap observed_variables(const sim::GameState& state)
{
    gdy::VariableMap out = state.player_variables();
    for (std::size_t i = 0; i < state.game().object_count(); ++i) {
        out.emplace(state.game().object_name(static_cast<int>(i)) + ":count", state.count(static_cast<int>(i)));
    }
    return out;
}

Env::Env(std::shared_ptr<const sim::Game> game, ObservationMode mode) : game_(std::move(game)), mode_(mode)
{
    if (!game_) {
        throw std::invalid_argument("Env: null game");
    }
}

Env Env::make(const gdy::GdyDocument& document, ObservationMode mode)
{
    return Env(sim::Game::compile(document), mode);
}

obs::Shape Env::observation_shape() const
{
    const auto& doc = game_->document();
    int w = 0;
    int h = 0;
    if (state_) {
        w = state_->width();
        h = state_->height();
    } else if (!doc.environment.levels.empty()) {
        const auto layout = gdy::parse_level(doc, doc.environment.levels.front());
        w = layout.width;
        h = layout.height;
    }
    return obs::observation_shape(doc, doc.environment.observer, w, h);
}

const sim::GameState& Env::state() const
{
    if (!state_) {
        throw Error(ErrorCode::episode_over, "environment has not been reset");
    }
    return *state_;
}

obs::VectorObservation Env::observe() const
{
    if (mode_ == ObservationMode::none) {
        return {};
    }
    return obs::vector_obs(*state_, game_->document().environment.observer);
}

Info Env::info() const
{
    Info out;
    out.variables = observed_variables(*state_);
    if (state_->status() == sim::Status::running) {
        out.mask = sim::valid_action_mask(*state_);
    } else {
        out.mask.assign(game_->action_space().size(), false);
    }
    return out;
}

std::pair<obs::VectorObservation, Info> Env::reset(const ResetOptions& options)
{
    auto layout = resolve_level(game_->document(), options.level);
    state_ = sim::reset(game_, layout, options.seed);
    options_ = options;
    ++episodes_;
    return {observe(), info()};
}

StepOutput Env::step(int action_id)
{
    if (!state_) {
        throw Error(ErrorCode::episode_over, "environment has not been reset");
    }
    sim::StepResult r = sim::step(*state_, action_id);
    StepOutput out;
    out.observation = observe();
    out.reward = r.reward;
    out.terminated = r.terminated;
    out.truncated = r.truncated;
    out.info.variables = observed_variables(*state_);
    out.info.mask = state_->status() == sim::Status::running ? sim::valid_action_mask(*state_)
                                                             : std::vector<bool>(game_->action_space().size(), false);
    out.events = std::move(r.events);
    return out;
}

InstanceError::InstanceError(std::size_t index, const Error& cause)
    : Error(cause.code(), "instance " + std::to_string(index) + ": " + cause.what()), index_(index)
{
}

VectorEnv::VectorEnv(std::shared_ptr<const sim::Game> game, std::size_t n, ObservationMode mode, unsigned workers)
    : workers_(workers == 0 ? 1 : workers)
{
    if (n == 0) {
        throw Error(ErrorCode::invalid_params, "a vector environment needs at least one instance");
    }
    envs_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        envs_.emplace_back(game, mode);
    }
    done_.assign(n, false);
}

template <typename Fn>
void VectorEnv::for_each(Fn&& fn)
{
    const std::size_t n = envs_.size();
    std::vector<std::exception_ptr> errors(n);
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < n; i += stride) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(workers_, n);
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(work, t, threads);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    // Report the lowest failing index so results do not depend on scheduling.
    for (std::size_t i = 0; i < n; ++i) {
        if (!errors[i]) {
            continue;
        }
        try {
            std::rethrow_exception(errors[i]);
        } catch (const Error& e) {
            throw InstanceError(i, e);
        }
    }
}

std::vector<std::pair<obs::VectorObservation, Info>> VectorEnv::reset(const std::vector<ResetOptions>& options)
{
    if (options.size() != envs_.size()) {
        throw Error(ErrorCode::invalid_params, "expected " + std::to_string(envs_.size()) + " reset options, got " +
                                                   std::to_string(options.size()));
    }
    std::vector<std::pair<obs::VectorObservation, Info>> out(envs_.size());
    for_each([&](std::size_t i) {
        out[i] = envs_[i].reset(options[i]);
    });
    done_.assign(envs_.size(), false);
    return out;
}

std::vector<StepOutput> VectorEnv::step(const std::vector<int>& actions)
{
    if (actions.size() != envs_.size()) {
        throw Error(ErrorCode::invalid_params,
                    "expected " + std::to_string(envs_.size()) + " actions, got " + std::to_string(actions.size()));
    }
    std::vector<StepOutput> out(envs_.size());
    // vector<bool> elements share words; collect flags separately before writing back.
    std::vector<char> done(done_.begin(), done_.end());
    for_each([&](std::size_t i) {
        if (done[i]) {
            ResetOptions next = envs_[i].last_options();
            ++next.seed;
            if (auto* gen = std::get_if<levelgen::GenParams>(&next.level)) {
                ++gen->seed;
            }
            auto [observation, info] = envs_[i].reset(next);
            out[i].observation = std::move(observation);
            out[i].info = std::move(info);
            out[i].autoreset = true;
            done[i] = 0;
            return;
        }
        out[i] = envs_[i].step(actions[i]);
        done[i] = out[i].terminated || out[i].truncated;
    });
    for (std::size_t i = 0; i < done.size(); ++i) {
        done_[i] = done[i] != 0;
    }
    return out;
}

} // namespace gridforge::env
