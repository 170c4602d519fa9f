package org.example.calendarevents;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.provider.CalendarContract;

public class CalendarEvents extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        JSONArray events = list(CalendarContract.Events.CONTENT_URI);
        callbackContext.success(events);
        return true;
    }
}
