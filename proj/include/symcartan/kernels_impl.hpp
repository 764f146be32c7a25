#pragma once

#include <exception>
#include <optional>

namespace symcartan {

template <class T>
std::vector<T> indexed_map(int count, const std::function<T(int)>& f, Exec exec)
{
    std::vector<std::optional<T>> slots(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    if (exec == Exec::serial) {
        for (int i = 0; i < count; ++i) slots[i].emplace(f(i));
    } else {
#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < count; ++i) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    std::vector<T> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace symcartan
