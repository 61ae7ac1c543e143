#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "task_list_view_model.hpp"

class TaskList : public TaskListViewModel {
public:
    void onLoadView(const std::string& tasks) override {
        std::vector<Row> rows;
        std::istringstream lines(tasks);
        std::string line;
        std::getline(lines, line);
        while (std::getline(lines, line)) {
            std::vector<std::string> cells = split(line);
            const std::string& priority = cells.at(1);
            Row row;
            row.cells.push_back({"prio_" + priority + ".png", std::nullopt});
            row.cells.push_back({cells.at(2), std::nullopt});
            row.cells.push_back(dueDate(cells.at(3)));
            if (priority == "high") {
                row.color = "red";
            }
            rows.push_back(row);
        }
        setTasksRows(rows);
        setDeleteTaskEnabled(!rows.empty());
    }

    void onTasksSelectRow(std::size_t) override {}

    void onAddNewTaskClick() override {
        std::vector<Row> rows = getTasksRows();
        Row row;
        row.cells = {{"prio_none.png", std::nullopt}, {"New Task", std::nullopt}, {"", std::nullopt}};
        rows.push_back(row);
        setTasksRows(rows);
        setTasksSelectedRow(rows.size() - 1);
        setDeleteTaskEnabled(true);
    }

    void onDeleteTaskClick() override {}

private:
    static std::vector<std::string> split(const std::string& line) {
        std::vector<std::string> out;
        std::size_t start = 0;
        for (std::size_t at; (at = line.find(" | ", start)) != std::string::npos; start = at + 3) {
            out.push_back(line.substr(start, at - start));
        }
        out.push_back(line.substr(start));
        return out;
    }

    static Cell dueDate(const std::string& iso) {
        static const char* months[] = {"January", "February", "March", "April", "May", "June", "July",
                                       "August", "September", "October", "November", "December"};
        int day = std::stoi(iso.substr(8, 2));
        int month = std::stoi(iso.substr(5, 2));
        const char* suffix = (day % 10 == 1 && day != 11) ? "st"
                             : (day % 10 == 2 && day != 12) ? "nd"
                             : (day % 10 == 3 && day != 13) ? "rd"
                                                            : "th";
        Cell cell;
        cell.text = iso.substr(8, 2) + "." + iso.substr(5, 2) + "." + iso.substr(0, 4);
        cell.tooltip = std::to_string(day) + suffix + " " + months[month - 1] + " " + iso.substr(0, 4);
        return cell;
    }
};

struct TaskListTestsSetup {
    std::unique_ptr<TaskListViewModel> createViewModel() { return std::make_unique<TaskList>(); }
    void provideContext(const std::string&, const std::string&) {}
    void provideContextFile(const std::string&, const std::string&) {}
};
