import static org.junit.jupiter.api.Assertions.assertEquals;

import java.nio.file.Files;
import java.nio.file.Path;
import java.util.List;
import java.util.OptionalInt;
import org.junit.jupiter.api.Test;

class TaskListTestsTest {
    @Test
    void loadTasksAndAddNew() {
        TaskListTestsSetup setup = new TaskListTestsSetup();
        TaskListViewModel viewModel = setup.createViewModel();

        // given
        String sampleTasksContext = "Id | Priority | Name | Due Date\n"
                + "1 | medium | Exercise | 2024-01-04\n"
                + "2 | high | Taxes | 2024-01-15";
        setup.provideContext("sampleTasks", sampleTasksContext);

        // when
        viewModel.onLoadView(sampleTasksContext);
        viewModel.onAddNewTaskClick();

        // then
        String[][] expectedTasks = {
            {"prio_medium.png", "Exercise", "04.01.2024"},
            {"prio_high.png", "Taxes", "15.01.2024"},
            {"prio_none.png", "New Task", ""},
        };
        List<TaskListViewModel.Row> tasksRows = viewModel.getTasksRows();
        assertEquals(expectedTasks.length, tasksRows.size(), "Tasks row count");
        assertEquals(expectedTasks[0][0], tasksRows.get(0).getCells().get(0).getText(), "Tasks row 0 Priority");
        assertEquals(expectedTasks[0][1], tasksRows.get(0).getCells().get(1).getText(), "Tasks row 0 Task Name");
        assertEquals(expectedTasks[0][2], tasksRows.get(0).getCells().get(2).getText(), "Tasks row 0 Due Date");
        assertEquals("4th January 2024", tasksRows.get(0).getCells().get(2).getTooltip(), "Tasks row 0 Due Date tooltip");
        assertEquals(expectedTasks[1][0], tasksRows.get(1).getCells().get(0).getText(), "Tasks row 1 Priority");
        assertEquals(expectedTasks[1][1], tasksRows.get(1).getCells().get(1).getText(), "Tasks row 1 Task Name");
        assertEquals(expectedTasks[1][2], tasksRows.get(1).getCells().get(2).getText(), "Tasks row 1 Due Date");
        assertEquals("red", tasksRows.get(1).getColor(), "Tasks row 1 color");
        assertEquals(expectedTasks[2][0], tasksRows.get(2).getCells().get(0).getText(), "Tasks row 2 Priority");
        assertEquals(expectedTasks[2][1], tasksRows.get(2).getCells().get(1).getText(), "Tasks row 2 Task Name");
        assertEquals(expectedTasks[2][2], tasksRows.get(2).getCells().get(2).getText(), "Tasks row 2 Due Date");
        assertEquals(OptionalInt.of(2), viewModel.getTasksSelectedRow(), "Tasks selectedRow");
        assertEquals(true, viewModel.isAddNewTaskEnabled(), "AddNewTask enabled");
        assertEquals(true, viewModel.isDeleteTaskEnabled(), "DeleteTask enabled");
    }
}
